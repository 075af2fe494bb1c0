"""Domain types and evaluation settings.

The nome is always ``q = exp(i*pi*tau)``.  Classical references that use
``exp(2*pi*i*tau)`` differ from every formula in this package by ``tau -> 2*tau``.
"""

from __future__ import annotations

import cmath
import enum
import os
import re
import warnings
from dataclasses import dataclass, field, replace
from typing import Union

from .errors import DomainError, OutsideStrip

STRIP_POLICIES = ("enforce", "warn", "ignore")


@dataclass(frozen=True)
class EvalConfig:
    tol: float = 1e-14
    max_terms: int = 2000
    strip_policy: str = "enforce"

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 8:
            raise DomainError(f"max_terms must be >= 8, got {self.max_terms}")
        if self.strip_policy not in STRIP_POLICIES:
            raise DomainError(f"unknown strip policy {self.strip_policy!r}")

    def with_policy(self, policy: str) -> "EvalConfig":
        return replace(self, strip_policy=policy)


DEFAULT = EvalConfig()
# log-derivative operations only warn by default
DEFAULT_WARN = EvalConfig(strip_policy="warn")


@dataclass(frozen=True)
class HalfPlanePoint:
    tau: complex

    def __post_init__(self):
        t = complex(self.tau)
        if not t.imag > 0:
            raise DomainError(f"tau must lie in the upper half-plane, got {t}")
        object.__setattr__(self, "tau", t)

    @property
    def q(self) -> complex:
        return cmath.exp(1j * cmath.pi * self.tau)

    def qpow(self, r: float) -> complex:
        """``q**r`` on the branch ``exp(i*pi*r*tau)``, single-valued in tau."""
        return cmath.exp(1j * cmath.pi * r * self.tau)

    def __add__(self, other) -> "HalfPlanePoint":
        return HalfPlanePoint(self.tau + complex(other))

    def __mul__(self, other) -> "HalfPlanePoint":
        return HalfPlanePoint(self.tau * complex(other))

    __rmul__ = __mul__

    def __complex__(self):
        return self.tau


TauLike = Union[HalfPlanePoint, complex, float, str]


def as_point(tau: TauLike) -> HalfPlanePoint:
    if isinstance(tau, HalfPlanePoint):
        return tau
    if isinstance(tau, str):
        return parse_tau(tau)
    return HalfPlanePoint(complex(tau))


class ThetaKind(enum.IntEnum):
    THETA1 = 1
    THETA2 = 2
    THETA3 = 3
    THETA4 = 4

    @property
    def period(self) -> int:
        return 2 if self in (ThetaKind.THETA1, ThetaKind.THETA2) else 1

    def zero_offset(self, tau: complex) -> complex:
        """Base point of the zero lattice ``zero_offset + m + n*tau``."""
        return {1: 0, 2: 0.5, 3: 0.5 + 0.5 * tau, 4: 0.5 * tau}[int(self)]

    def zero(self, tau: complex, m: int = 0, n: int = 0) -> complex:
        return self.zero_offset(tau) + m + n * tau


def as_kind(kind) -> ThetaKind:
    try:
        return ThetaKind(int(kind))
    except (ValueError, TypeError):
        raise DomainError(f"theta kind must be 1..4, got {kind!r}") from None


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` (``i`` or ``j``)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    # bare "j", "+j", "-j" need an explicit unit coefficient
    s = re.sub(r"(^|[+-])j$", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise DomainError(f"cannot parse complex number {text!r}") from None


def parse_tau(text: str) -> HalfPlanePoint:
    value = parse_complex(text)
    if not value.imag > 0:
        raise DomainError(f"tau must have positive imaginary part: {text!r}")
    return HalfPlanePoint(value)


def check_strip(what: str, ratio: float, policy: str) -> bool:
    """Apply a strip policy to ``ratio = |x / sin(pi*tau/2)|``; True if inside."""
    inside = ratio < 1.0
    if inside or policy == "ignore":
        return inside
    if policy == "enforce":
        raise OutsideStrip(what, ratio)
    warnings.warn(f"{what}: outside validity strip (ratio {ratio:.4g})", stacklevel=3)
    return inside


DEFAULT_GRID = ("1i", "2i", "0.3+1.2i", "1+1i")


@dataclass(frozen=True)
class RunConfig:
    """CLI-level defaults; every field can be overridden by ``THETAKIT_<FIELD>``."""

    tol: float = 1e-14
    max_terms: int = 2000
    order: int = 40
    grid: tuple = DEFAULT_GRID
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)

    @classmethod
    def from_env(cls, environ=None) -> "RunConfig":
        env = os.environ if environ is None else environ
        kw = {}
        if "THETAKIT_TOL" in env:
            kw["tol"] = float(env["THETAKIT_TOL"])
        if "THETAKIT_MAX_TERMS" in env:
            kw["max_terms"] = int(env["THETAKIT_MAX_TERMS"])
        if "THETAKIT_ORDER" in env:
            kw["order"] = int(env["THETAKIT_ORDER"])
        if "THETAKIT_GRID" in env:
            kw["grid"] = tuple(s for s in env["THETAKIT_GRID"].split(",") if s.strip())
        if "THETAKIT_WORKERS" in env:
            kw["workers"] = max(1, int(env["THETAKIT_WORKERS"]))
        return cls(**kw)

    def eval_config(self, policy: str = "enforce") -> EvalConfig:
        return EvalConfig(tol=self.tol, max_terms=self.max_terms, strip_policy=policy)

    def taus(self):
        return [parse_tau(s) for s in self.grid]
