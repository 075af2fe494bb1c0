"""Jacobi theta functions by three representations and the c_2p coefficients.

Representations:

* ``fourier``   -- the defining q-series (reference oracle, valid everywhere);
* ``product``   -- Jacobi triple product (valid everywhere);
* ``expansion`` -- ``theta_4(0) * prefactor * exp(sum_p c_2p x**(2p))`` with
  ``x`` one of ``sin(pi v)``, ``cos(pi v)``, ``sin(pi(v+tau/2))``,
  ``cos(pi(v+tau/2))``; the p-series converges for ``|x / sin(pi tau/2)| < 1``.

``c_2p(tau) = -(1/p) sum_k w_k**p`` with ``w_k = 1/sin^2((k+1/2) pi tau)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import _backend as K
from .config import (
    DEFAULT,
    DEFAULT_WARN,
    EvalConfig,
    HalfPlanePoint,
    TauLike,
    ThetaKind,
    as_kind,
    as_point,
    check_strip,
)
from .errors import DomainError, NoConvergence, Overflow, PoleAtV, SeedFailure
from .qseries import QSeries, qs_inv, qs_mul

PI = math.pi
REPRESENTATIONS = ("fourier", "product", "expansion")


@dataclass(frozen=True)
class Evaluation:
    """A value together with how it was obtained."""

    value: complex
    representation: str
    terms: int
    strip_ratio: Optional[float] = None
    inside_strip: Optional[bool] = None


def _ok(what: str, res):
    value, terms, converged = res
    if not converged:
        raise NoConvergence(what, terms)
    return value, terms


# --- Fourier and product ------------------------------------------------------


def theta_fourier_eval(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, deriv: int = 0) -> Evaluation:
    k = as_kind(kind)
    t = as_point(tau).tau
    if deriv < 0:
        raise DomainError("derivative order must be >= 0")
    value, terms = _ok(f"theta{int(k)} fourier", K.fourier(int(k), complex(v), t, deriv, cfg.tol, cfg.max_terms))
    return Evaluation(value, "fourier", terms)


def theta_fourier(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, deriv: int = 0) -> complex:
    """Defining series (or its ``deriv``-th termwise v-derivative)."""
    return theta_fourier_eval(kind, v, tau, cfg, deriv).value


def theta_product_eval(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> Evaluation:
    k = as_kind(kind)
    t = as_point(tau).tau
    value, terms = _ok(f"theta{int(k)} product", K.product(int(k), complex(v), t, cfg.tol, cfg.max_terms))
    return Evaluation(value, "product", terms)


def theta_product(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    return theta_product_eval(kind, v, tau, cfg).value


def null_values(tau: TauLike, cfg: EvalConfig = DEFAULT) -> Tuple[complex, complex, complex]:
    """``(theta_2(0), theta_3(0), theta_4(0))``."""
    return tuple(theta_fourier(k, 0, tau, cfg) for k in (2, 3, 4))


# --- c_2p ---------------------------------------------------------------------


def _check_p(p: int):
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")


def c2p_closed(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``-(1/p) sum_k [-4 q^(2k+1) / (1 - q^(2k+1))^2]**p``."""
    _check_p(p)
    pt = as_point(tau)
    s, _ = _ok(f"c2p_closed(p={p})", K.wpow_sum(pt.q, int(p), cfg.tol, cfg.max_terms))
    return -s / p


def c2p_sine_form(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``-(1/p) sum_k sin((k+1/2) pi tau)**(-2p)``, summed directly."""
    _check_p(p)
    t = as_point(tau).tau
    total = 0j
    small = 0
    for k in range(cfg.max_terms):
        term = cmath.sin((k + 0.5) * PI * t) ** (-2 * p)
        total += term
        if abs(term) <= cfg.tol * abs(total):
            small += 1
            if small >= 2:
                return -total / p
        else:
            small = 0
    raise NoConvergence(f"c2p_sine_form(p={p})", cfg.max_terms)


def c2p_binomial(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """Factorial-weighted Lambert sum over ``n >= p``."""
    _check_p(p)
    pt = as_point(tau)
    value, terms, converged = K.binomial_sum(pt.q, int(p), cfg.tol, cfg.max_terms)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise Overflow(f"c2p_binomial(p={p}): intermediate magnitude not representable")
    if not converged:
        raise NoConvergence(f"c2p_binomial(p={p})", terms)
    return value


def c2_lambert(tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``c_2 = 4 sum_n n q^n / (1 - q^(2n))``."""
    q = as_point(tau).q
    total = 0j
    qn = 1.0 + 0j
    small = 0
    for n in range(1, cfg.max_terms + 1):
        qn *= q
        term = 4.0 * n * qn / (1.0 - qn * qn)
        total += term
        if abs(term) <= cfg.tol * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise NoConvergence("c2_lambert", cfg.max_terms)


def _w_values(q: complex, scale: float, tol: float, max_terms: int) -> List[complex]:
    ws = []
    qk = q
    small = 0
    for _ in range(max_terms):
        w = -4.0 * qk / (1.0 - qk) ** 2
        ws.append(w)
        if abs(w) * scale < tol:
            small += 1
            if small >= 2:
                return ws
        else:
            small = 0
        qk *= q * q
    raise NoConvergence("w_k list", max_terms)


def c2p_resummed(x2: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``sum_k Log(1 - w_k x2)``: the continuation of ``sum_p c_2p x2**p`` along the ray ``t*x2``.

    Each segment ``1 - t w_k x2`` (0 <= t <= 1) avoids the negative real
    axis unless it ends on it, so the principal logarithm is the
    continuation along that ray.
    """
    q = as_point(tau).q
    x2 = complex(x2)
    if x2 == 0:
        return 0j
    total = 0j
    for w in _w_values(q, max(1.0, abs(x2)), cfg.tol * 1e-3, cfg.max_terms):
        total += cmath.log(1.0 - w * x2)
    return total


def strip_ratio_x2(x2: complex, tau: TauLike) -> float:
    """``|x / sin(pi tau / 2)|`` given ``x2 = x**2``."""
    t = as_point(tau).tau
    return math.sqrt(abs(x2)) / abs(cmath.sin(0.5 * PI * t))


def c2p_power_sum_eval(x2: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, method: str = "auto") -> Evaluation:
    """``sum_{p>=1} c_2p(tau) * x2**p``; ``method`` in {series, resummed, auto}."""
    if method not in ("series", "resummed", "auto"):
        raise DomainError(f"unknown method {method!r}")
    pt = as_point(tau)
    ratio = strip_ratio_x2(x2, pt)
    if method == "resummed" or (method == "auto" and ratio >= 1.0):
        return Evaluation(c2p_resummed(x2, pt, cfg), "resummed", 0, ratio, ratio < 1.0)
    value, terms, converged = K.exponent_sum(pt.q, complex(x2), cfg.tol, cfg.max_terms)
    if not converged:
        if method == "series":
            raise NoConvergence("c2p power sum", terms)
        # same function inside the strip; the series is just too slow near its edge
        return Evaluation(c2p_resummed(x2, pt, cfg), "resummed", 0, ratio, True)
    return Evaluation(value, "series", terms, ratio, True)


def c2p_power_sum(x2: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, method: str = "auto") -> complex:
    return c2p_power_sum_eval(x2, tau, cfg, method).value


# --- expansion representation -------------------------------------------------


def expansion_argument(kind, v: complex, tau: TauLike) -> Tuple[complex, complex]:
    """``(x, prefactor)`` such that ``theta = theta_4(0) * prefactor * exp(S(x**2))``."""
    k = as_kind(kind)
    t = as_point(tau).tau
    v = complex(v)
    if k == ThetaKind.THETA4:
        return cmath.sin(PI * v), 1.0 + 0j
    if k == ThetaKind.THETA3:
        return cmath.cos(PI * v), 1.0 + 0j
    if k == ThetaKind.THETA2:
        return cmath.cos(PI * (v + 0.5 * t)), cmath.exp(1j * PI * (v + 0.25 * t))
    return cmath.sin(PI * (v + 0.5 * t)), cmath.exp(1j * PI * (v - 0.5 + 0.25 * t))


def strip_ratio(kind, v: complex, tau: TauLike) -> float:
    """Convergence ratio of the expansion's p-series for this kind (< 1 inside)."""
    x, _ = expansion_argument(kind, v, tau)
    return strip_ratio_x2(x * x, tau)


def theta_expansion_eval(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> Evaluation:
    k = as_kind(kind)
    pt = as_point(tau)
    x, pre = expansion_argument(k, v, pt)
    ratio = strip_ratio_x2(x * x, pt)
    inside = check_strip(f"theta{int(k)} expansion", ratio, cfg.strip_policy)
    t4 = theta_fourier(4, 0, pt, cfg)
    ev = c2p_power_sum_eval(x * x, pt, cfg, "series" if inside else "resummed")
    return Evaluation(t4 * pre * cmath.exp(ev.value), "expansion", ev.terms, ratio, inside)


def theta_expansion(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """Trigonometric expansion; outside the strip, policy ``warn``/``ignore`` uses the resummed logs."""
    return theta_expansion_eval(kind, v, tau, cfg).value


def evaluate_theta(kind, v: complex, tau: TauLike, representation: str = "fourier", cfg: EvalConfig = DEFAULT) -> Evaluation:
    if representation == "fourier":
        return theta_fourier_eval(kind, v, tau, cfg)
    if representation == "product":
        return theta_product_eval(kind, v, tau, cfg)
    if representation == "expansion":
        return theta_expansion_eval(kind, v, tau, cfg)
    raise DomainError(f"unknown representation {representation!r}")


# --- seeds and the recursion --------------------------------------------------


@dataclass(frozen=True)
class CoeffTable:
    """``{p: c_2p}`` (kind "c") or ``{p: a_2p}`` (kind "a"), numeric or formal."""

    kind: str
    values: Dict[int, Union[complex, QSeries]]
    max_p: int
    tau: Optional[HalfPlanePoint] = None
    order: Optional[int] = None
    meta: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("c", "a"):
            raise DomainError(f"CoeffTable kind must be 'c' or 'a', got {self.kind!r}")
        missing = [p for p in range(1, self.max_p + 1) if p not in self.values]
        if missing:
            raise DomainError(f"CoeffTable missing p = {missing}")
        if self.order is not None:
            orders = {s.order for s in self.values.values()}
            if orders != {self.order}:
                raise DomainError("formal CoeffTable entries must share one truncation order")

    def __getitem__(self, p: int):
        return self.values[p]

    def as_list(self) -> list:
        return [self.values[p] for p in range(1, self.max_p + 1)]


@dataclass(frozen=True)
class Seeds:
    c0: complex
    c2: complex
    c4: complex
    theta2_4_theta3_4: complex  # theta_2(0)^4 theta_3(0)^4


def c_seeds(tau: TauLike, cfg: EvalConfig = DEFAULT) -> Seeds:
    """Seeds of the recursion from null values and the termwise ``theta_4''(0)``."""
    try:
        t2, t3, t4 = null_values(tau, cfg)
        t4pp = theta_fourier(4, 0, tau, cfg, deriv=2)
    except NoConvergence as exc:
        raise SeedFailure(f"null-value evaluation failed: {exc}") from exc
    if t4 == 0:
        raise SeedFailure("theta_4(0) vanished")
    c0 = -4.0 * (t2**4 + t3**4)
    c2 = t4pp / (2.0 * PI**2 * t4)
    prod = t2**4 * t3**4
    return Seeds(c0, c2, c2 / 3.0 - prod / 12.0, prod)


def c4_printed_seed(tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """The seed ``theta_2^4 theta_3^4 / 3 + c_2 / 3`` as it is usually printed (not correct)."""
    s = c_seeds(tau, cfg)
    return s.theta2_4_theta3_4 / 3.0 + s.c2 / 3.0


def _march(c0, c2, c4, max_p):
    """Forward recursion on ``A_p = (2p+2)(2p+1) c_(2p+2) - 4p^2 c_2p``.

    ``(2p+2)(2p+1) A_(p+1) = (4p^2 + c0) A_p - 6 sum_{0<r<p} A_r A_(p-r)``.
    """
    c = {1: c2, 2: c4}
    A = {1: 12 * c4 - 4 * c2}
    for p in range(1, max_p - 1):
        conv = sum((A[r] * A[p - r] for r in range(1, p)), 0 * c2)
        A[p + 1] = ((4 * p * p + c0) * A[p] - 6 * conv) / ((2 * p + 2) * (2 * p + 1))
        n = p + 1
        c[n + 1] = (A[n] + 4 * n * n * c[n]) / ((2 * n + 2) * (2 * n + 1))
    return c


def recursion_amplification(tau: TauLike, max_p: int) -> float:
    """Rough growth of relative rounding error after marching to ``max_p``."""
    s2 = abs(cmath.sin(0.5 * PI * as_point(tau).tau)) ** 2
    return max(1.0, s2) ** (max_p - 1)


def c2p_recursive(tau: TauLike, max_p: int, cfg: EvalConfig = DEFAULT, dps: Union[int, str, None] = "auto") -> CoeffTable:
    """March the c_2p recursion from the seeds.

    Forward marching amplifies seed rounding roughly like ``|sin(pi tau/2)|**(2p)``
    relative to ``c_2p``.  ``dps=None`` forces double precision, an integer
    runs seeds and recursion in mpmath at that many digits, and ``"auto"``
    switches to mpmath only when double precision would lose more than
    about seven digits.
    """
    if max_p < 2:
        raise DomainError("max_p must be >= 2")
    pt = as_point(tau)
    if dps == "auto":
        amp = recursion_amplification(pt, max_p)
        dps = None if amp * 1e-16 < 1e-9 else 20 + math.ceil(math.log10(amp))
    if dps is None:
        s = c_seeds(pt, cfg)
        c = _march(s.c0, s.c2, s.c4, max_p)
        values = {p: complex(c[p]) for p in range(1, max_p + 1)}
    else:
        import mpmath

        with mpmath.workdps(dps):
            tt = mpmath.mpc(pt.tau.real, pt.tau.imag)
            q = mpmath.exp(1j * mpmath.pi * tt)
            try:
                t2, t3, t4 = (mpmath.jtheta(n, 0, q) for n in (2, 3, 4))
                t4pp = mpmath.jtheta(4, 0, q, 2)  # derivative in pi*v; pi^2 cancels below
            except Exception as exc:  # mpmath raises plain ValueError on non-convergence
                raise SeedFailure(f"null-value evaluation failed: {exc}") from exc
            c0 = -4 * (t2**4 + t3**4)
            c2 = t4pp / (2 * t4)
            c4 = c2 / 3 - t2**4 * t3**4 / 12
            c = _march(c0, c2, c4, max_p)
            values = {p: complex(c[p]) for p in range(1, max_p + 1)}
    return CoeffTable("c", values, max_p, pt, meta={"dps": dps})


def system_a_residuals(tau: TauLike, max_p: int, cfg: EvalConfig = DEFAULT, form: str = "corrected") -> List[Tuple[float, float]]:
    """Residuals ``(|LHS - RHS|, scale)`` of the c_2p recursion with closed-form inputs.

    ``form="corrected"`` checks the A_p recursion used by :func:`c2p_recursive`;
    ``form="printed"`` checks the widely quoted quadratic system, which does not hold.
    """
    pt = as_point(tau)
    s = c_seeds(pt, cfg)
    c = {p: c2p_closed(p, pt, cfg) for p in range(1, max_p + 3)}
    out = []
    if form == "corrected":
        A = {p: (2 * p + 2) * (2 * p + 1) * c[p + 1] - 4 * p * p * c[p] for p in range(1, max_p + 2)}
        out.append((abs(A[1] + s.theta2_4_theta3_4), abs(s.theta2_4_theta3_4)))
        for p in range(1, max_p):
            terms = [(2 * p + 2) * (2 * p + 1) * A[p + 1], -(4 * p * p + s.c0) * A[p]]
            terms += [6 * A[r] * A[p - r] for r in range(1, p)]
            out.append((abs(sum(terms)), max(abs(x) for x in terms)))
        return out
    if form == "printed":
        for p in range(1, max_p + 1):
            lhs = 24 * math.comb(2 * p + 4, 4) * c[p + 2]
            sq = (2 * p + 1) * (2 * p + 2) * c[p + 1] - 2 * c[1] - sum(2 * k * c[k] for k in range(1, p + 1))
            rhs_terms = [
                (2 * p + 1) * (2 * p + 2) * ((2 * p + 2) * (2 * p + 3) + 4 * p * p - s.c0) * c[p + 1],
                (2 * p) ** 2 * (s.c0 - (2 * p) ** 2) * c[p],
                -6 * sq**2,
            ]
            scale = max([abs(lhs)] + [abs(x) for x in rhs_terms])
            out.append((abs(lhs - sum(rhs_terms)), scale))
        return out
    raise DomainError(f"unknown form {form!r}")


# --- logarithmic forms --------------------------------------------------------


def log_theta4_fourier(v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``4 sum_n q^n sin^2(n pi v) / (n (1 - q^(2n)))`` = ``log(theta_4(v)/theta_4(0))``."""
    pt = as_point(tau)
    v = complex(v)
    check_strip("log_theta4_fourier", abs(v.imag) / (0.5 * pt.tau.imag), cfg.strip_policy)
    q = pt.q
    # 4 q^n sin^2(n pi v) = 2 q^n - a^n - b^n keeps every power below 1 in modulus
    e = cmath.exp(2j * PI * v)
    a, b = q * e, q / e
    total = 0j
    qn = an = bn = 1.0 + 0j
    small = 0
    for n in range(1, cfg.max_terms + 1):
        qn *= q
        an *= a
        bn *= b
        term = (2.0 * qn - an - bn) / (n * (1.0 - qn * qn))
        total += term
        if abs(term) < cfg.tol * (1.0 + abs(total)):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise NoConvergence("log_theta4_fourier", cfg.max_terms)


def theta_log_derivative(kind, v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT_WARN) -> complex:
    """``theta'(v)/theta(v)`` (derivative in v) from the logarithmic k-sums.

    theta_1 and theta_2 carry the terms ``pi cot(pi v)`` and ``-pi tan(pi v)``.
    """
    k = as_kind(kind)
    pt = as_point(tau)
    v = complex(v)
    bound = pt.tau.imag if k in (ThetaKind.THETA1, ThetaKind.THETA2) else 0.5 * pt.tau.imag
    check_strip(f"theta{int(k)} log-derivative", abs(v.imag) / bound, cfg.strip_policy)
    q = pt.q
    c2 = cmath.cos(2 * PI * v)
    s2 = cmath.sin(2 * PI * v)
    if k == ThetaKind.THETA1:
        sv = cmath.sin(PI * v)
        if abs(sv) < 1e-300 or abs(v - round(v.real)) < 1e-15:
            raise PoleAtV(f"theta1 log-derivative has a pole at v = {v}")
        lead, off, sgn = PI * cmath.cos(PI * v) / sv, 2, -1.0
    elif k == ThetaKind.THETA2:
        cv = cmath.cos(PI * v)
        if abs(cv) < 1e-300 or abs(v - (math.floor(v.real) + 0.5)) < 1e-15:
            raise PoleAtV(f"theta2 log-derivative has a pole at v = {v}")
        lead, off, sgn = -PI * cmath.sin(PI * v) / cv, 2, 1.0
    elif k == ThetaKind.THETA3:
        lead, off, sgn = 0j, 1, 1.0
    else:
        lead, off, sgn = 0j, 1, -1.0
    # d/dv log(1 + 2 sgn a cos 2 pi v + a^2) = -4 pi sgn a sin(2 pi v) / (...)
    total = 0j
    small = 0
    for j in range(cfg.max_terms):
        a = q ** (2 * j + off)
        den = 1.0 + sgn * 2.0 * a * c2 + a * a
        if den == 0:
            raise PoleAtV(f"theta{int(k)} log-derivative: zero of theta at v = {v}")
        term = a / den
        total += term
        if abs(term) < cfg.tol * (1.0 + abs(total)):
            small += 1
            if small >= 2:
                return lead - sgn * 4.0 * PI * s2 * total
        else:
            small = 0
    raise NoConvergence(f"theta{int(k)} log-derivative", cfg.max_terms)


def theta_log_derivative_fd(kind, v: complex, tau: TauLike, h: float = 1e-5, cfg: EvalConfig = DEFAULT) -> complex:
    """Central finite difference of ``log theta_fourier``; the oracle for :func:`theta_log_derivative`."""
    f1 = theta_fourier(kind, complex(v) + h, tau, cfg)
    f0 = theta_fourier(kind, complex(v) - h, tau, cfg)
    return (cmath.log(f1) - cmath.log(f0)) / (2 * h)


# --- ratios, theta_1'(0), eta ---------------------------------------------------


def power_sum_in_strip(what: str, x2: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """Strip-policed ``sum_p c_2p x2**p`` (resummed outside the strip unless policy is enforce)."""
    pt = as_point(tau)
    ratio = strip_ratio_x2(x2, pt)
    inside = check_strip(what, ratio, cfg.strip_policy)
    return c2p_power_sum(x2, pt, cfg, "auto" if inside else "resummed")


def theta_ratio(v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> Tuple[complex, complex]:
    """``(theta_1/theta_2, theta_3/theta_4)`` from differences of c_2p power sums.

    The first ratio carries the constant ``-i`` that comes from the ratio of
    the two expansion prefactors.
    """
    pt = as_point(tau)
    v = complex(v)
    s1 = cmath.sin(PI * (v + 0.5 * pt.tau)) ** 2
    c1 = cmath.cos(PI * (v + 0.5 * pt.tau)) ** 2
    s0 = cmath.sin(PI * v) ** 2
    c0 = cmath.cos(PI * v) ** 2
    r12 = -1j * cmath.exp(power_sum_in_strip("theta_ratio", s1, pt, cfg) - power_sum_in_strip("theta_ratio", c1, pt, cfg))
    r34 = cmath.exp(power_sum_in_strip("theta_ratio", c0, pt, cfg) - power_sum_in_strip("theta_ratio", s0, pt, cfg))
    return r12, r34


def theta_ratio_printed(v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """theta_1/theta_2 without the ``-i`` constant (report-only form)."""
    return 1j * theta_ratio(v, tau, cfg)[0]


@dataclass(frozen=True)
class PrimeZeroCheck:
    fourier: complex  # termwise derivative of the defining series at 0
    null_product: complex  # pi theta_2(0) theta_3(0) theta_4(0)
    expansion: complex  # pi theta_4(0)^3 q^(1/4) exp(sum c_2p [1 + cos^2p(pi tau/2)])
    printed_expansion: complex  # same with the leading minus sign

    @property
    def discrepancy(self) -> float:
        vals = (self.fourier, self.null_product, self.expansion)
        return max(abs(a - b) for a in vals for b in vals)


def _eta_exponent(pt: HalfPlanePoint, cfg: EvalConfig) -> complex:
    """``sum_p c_2p [1 + cos^2p(pi tau/2)]`` (resummed where the series diverges)."""
    cz = cmath.cos(0.5 * PI * pt.tau) ** 2
    return c2p_power_sum(1.0, pt, cfg) + c2p_power_sum(cz, pt, cfg)


def theta1_prime_zero(tau: TauLike, cfg: EvalConfig = DEFAULT) -> PrimeZeroCheck:
    pt = as_point(tau)
    t2, t3, t4 = null_values(pt, cfg)
    lhs = theta_fourier(1, 0, pt, cfg, deriv=1)
    exp_side = PI * t4**3 * pt.qpow(0.25) * cmath.exp(_eta_exponent(pt, cfg))
    return PrimeZeroCheck(lhs, PI * t2 * t3 * t4, exp_side, -exp_side)


def dedekind_eta(tau: TauLike, cfg: EvalConfig = DEFAULT, route: str = "product") -> complex:
    """Dedekind eta with ``q = exp(i pi tau)``: ``eta = q^(1/12) prod (1 - q^(2n))``."""
    pt = as_point(tau)
    if route == "product":
        q2 = pt.q**2
        total = pt.qpow(1.0 / 12.0)
        qn = 1.0 + 0j
        small = 0
        for n in range(1, cfg.max_terms + 1):
            qn *= q2
            total *= 1.0 - qn
            if abs(qn) < cfg.tol:
                small += 1
                if small >= 2:
                    return total
            else:
                small = 0
        raise NoConvergence("dedekind_eta product", cfg.max_terms)
    if route == "expansion":
        t4 = theta_fourier(4, 0, pt, cfg)
        return 2.0 ** (-1.0 / 3.0) * pt.qpow(1.0 / 12.0) * t4 * cmath.exp(_eta_exponent(pt, cfg) / 3.0)
    raise DomainError(f"unknown eta route {route!r}")


# --- formal (exact) versions --------------------------------------------------


def _one_minus_qk(k: int, order: int) -> QSeries:
    return QSeries.from_dict({0: 1, k: -1}, order)


def c2p_formal_closed(p: int, order: int) -> QSeries:
    """``-(1/p) sum_k (-4)^p q^(p(2k+1)) (1 - q^(2k+1))^(-2p)`` as an exact QSeries."""
    _check_p(p)
    total = QSeries.zero(order)
    k = 0
    while p * (2 * k + 1) <= order:
        e = 2 * k + 1
        inv = qs_inv(_one_minus_qk(e, order) ** (2 * p))
        total = total + QSeries.monomial(p * e, order, (-4) ** p) * inv
        k += 1
    return total * Fraction(-1, p)


def c2p_formal_binomial(p: int, order: int) -> QSeries:
    """Factorial-weighted Lambert form, expanded with ``q^n/(1-q^(2n)) = sum_j q^(n(2j+1))``."""
    _check_p(p)
    lead = Fraction((-1) ** (p + 1) * 2 ** (2 * p + 1), math.factorial(2 * p))
    cs = [Fraction(0)] * (order + 1)
    for n in range(p, order + 1):
        weight = lead * (math.factorial(n + p - 1) // math.factorial(n - p))
        e = n
        while e <= order:
            cs[e] += weight
            e += 2 * n
    return QSeries(tuple(cs), order)


def c2_formal_forms(order: int) -> Tuple[QSeries, QSeries, QSeries]:
    """The three exact forms of c_2.

    1. ``-4 sum (-1)^n n^2 q^(n^2) / (1 + 2 sum (-1)^n q^(n^2))``
    2. ``4 sum q^(2n-1) / (1 - q^(2n-1))^2``
    3. ``4 sum n q^n / (1 - q^(2n))``
    """
    num = {}
    den = {0: 1}
    n = 1
    while n * n <= order:
        num[n * n] = -4 * (-1) ** n * n * n
        den[n * n] = 2 * (-1) ** n
        n += 1
    f1 = qs_mul(QSeries.from_dict(num, order), qs_inv(QSeries.from_dict(den, order)))
    cs2 = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1, 2):
        # q^m/(1-q^m)^2 = sum_j j q^(jm)
        j = 1
        while j * m <= order:
            cs2[j * m] += 4 * j
            j += 1
    f2 = QSeries(tuple(cs2), order)
    cs3 = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        e = n
        while e <= order:
            cs3[e] += 4 * n
            e += 2 * n
    f3 = QSeries(tuple(cs3), order)
    return f1, f2, f3


def c2p_formal_table(max_p: int, order: int, method: str = "closed") -> CoeffTable:
    fn = {"closed": c2p_formal_closed, "binomial": c2p_formal_binomial}.get(method)
    if fn is None:
        raise DomainError(f"unknown formal method {method!r}")
    return CoeffTable("c", {p: fn(p, order) for p in range(1, max_p + 1)}, max_p, order=order)


def c2p_table(tau: TauLike, max_p: int, cfg: EvalConfig = DEFAULT, method: str = "closed") -> CoeffTable:
    fn = {"closed": c2p_closed, "binomial": c2p_binomial, "sine": c2p_sine_form}.get(method)
    if fn is None:
        raise DomainError(f"unknown method {method!r}")
    pt = as_point(tau)
    return CoeffTable("c", {p: fn(p, pt, cfg) for p in range(1, max_p + 1)}, max_p, pt)


def theta4_triple_product_formal(order: int) -> QSeries:
    """``theta_4(0)`` as ``prod (1 - q^(2n)) (1 - q^(2n-1))^2`` expanded exactly."""
    from .qseries import qs_product

    def factors():
        n = 1
        while True:
            e = 2 * n - 1
            f = _one_minus_qk(e, order) ** 2 * _one_minus_qk(2 * n, order)
            yield e, f
            n += 1

    return qs_product(factors(), order)


def theta4_null_formal(order: int) -> QSeries:
    """Defining series ``1 + 2 sum (-1)^n q^(n^2)``."""
    terms = {0: 1}
    n = 1
    while n * n <= order:
        terms[n * n] = 2 * (-1) ** n
        n += 1
    return QSeries.from_dict(terms, order)
