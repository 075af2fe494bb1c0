"""Weierstrass p for the lattice {2m + 2n tau}, Jacobi Zn, and K(k).

``wp_oracle`` (second log-derivative of theta_1 by termwise differentiation)
is the precise reference; ``wp_lattice`` is a loose, independent spot check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .config import DEFAULT, DEFAULT_WARN, EvalConfig, HalfPlanePoint, TauLike, as_point, check_strip
from .errors import DivisionByZero, DomainError, NoConvergence, OutsideStrip, PoleAtLatticePoint
from .report import Residual
from .theta import _w_values, c2p_closed, null_values, theta_fourier

PI = math.pi


@dataclass(frozen=True)
class WpParams:
    tau: HalfPlanePoint
    e1: complex  # p(1)
    e2: complex  # p(1 + tau)
    e3: complex  # p(tau)
    g2: complex
    g3: complex
    eta: complex  # quasi-period: -theta_1'''(0) / (12 theta_1'(0))
    theta1_prime: complex

    @classmethod
    def from_tau(cls, tau: TauLike, cfg: EvalConfig = DEFAULT) -> "WpParams":
        pt = as_point(tau)
        t2, t3, t4 = null_values(pt, cfg)
        e1 = PI**2 / 12 * (t3**4 + t4**4)
        e2 = PI**2 / 12 * (t2**4 - t4**4)
        e3 = -(PI**2) / 12 * (t2**4 + t3**4)
        g2 = -4 * (e1 * e2 + e1 * e3 + e2 * e3)
        g3 = 4 * e1 * e2 * e3
        d1 = theta_fourier(1, 0, pt, cfg, deriv=1)
        d3 = theta_fourier(1, 0, pt, cfg, deriv=3)
        return cls(pt, e1, e2, e3, g2, g3, -d3 / (12 * d1), d1)

    @property
    def a2_seed(self) -> complex:
        """``(g2 - 12 e3^2) / pi^2``."""
        return (self.g2 - 12 * self.e3**2) / PI**2


def _wsum(pt: HalfPlanePoint, power: int, cfg: EvalConfig) -> complex:
    """``sum_k w_k**power``; equals ``-power * c_(2 power)``."""
    return -power * c2p_closed(power, pt, cfg)


def a2p_closed(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """Coefficient of ``sin^2p(pi z/2)`` in ``e3 - p(z + tau)``, lattice {2m + 2n tau}.

    ``(pi^2/4) [-2(2p+1) sum_k w_k^(p+1) + 4p sum_k w_k^p]`` with
    ``w_k = 1/sin^2((k+1/2) pi tau)``.
    """
    return PI**2 / 4 * a2p_unscaled(p, tau, cfg)


def a2p_unscaled(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """The bracket without the ``pi^2/4`` (as the closed form is usually printed)."""
    if p < 1:
        raise DomainError("p must be >= 1")
    pt = as_point(tau)
    return -2 * (2 * p + 1) * _wsum(pt, p + 1, cfg) + 4 * p * _wsum(pt, p, cfg)


def bridge_ratios(tau: TauLike, p_max: int, cfg: EvalConfig = DEFAULT) -> List[complex]:
    """``[(2p+2)(2p+1) c_(2p+2) - 4p^2 c_2p] / a_2p`` for p = 1..p_max (constant 4/pi^2)."""
    pt = as_point(tau)
    out = []
    for p in range(1, p_max + 1):
        num = (2 * p + 2) * (2 * p + 1) * c2p_closed(p + 1, pt, cfg) - 4 * p * p * c2p_closed(p, pt, cfg)
        out.append(num / a2p_closed(p, pt, cfg))
    return out


def a2p_recursion_residuals(tau: TauLike, p_max: int, cfg: EvalConfig = DEFAULT) -> List[Tuple[float, float]]:
    """``(pi/2)^2 [(2p+2)(2p+1) a_(2p+2) - 4p^2 a_2p] - 12 e3 a_2p + 6 sum a_2r a_(2p-2r)``; (|residual|, scale)."""
    pt = as_point(tau)
    e3 = WpParams.from_tau(pt, cfg).e3
    a = {p: a2p_closed(p, pt, cfg) for p in range(1, p_max + 2)}
    out = []
    for p in range(1, p_max + 1):
        terms = [
            (PI / 2) ** 2 * (2 * p + 2) * (2 * p + 1) * a[p + 1],
            -((PI / 2) ** 2) * 4 * p * p * a[p],
            -12 * e3 * a[p],
        ] + [6 * a[r] * a[p - r] for r in range(1, p)]
        out.append((abs(sum(terms)), max(abs(t) for t in terms)))
    return out


def _strip_ratio(z: complex, pt: HalfPlanePoint) -> float:
    return abs(cmath.sin(0.5 * PI * z)) / abs(cmath.sin(0.5 * PI * pt.tau))


def _a_series(s2: complex, pt: HalfPlanePoint, cfg: EvalConfig, unscaled: bool = False) -> Tuple[complex, int]:
    """``sum_p a_2p s2**p`` by running powers ``(w_k s2)^p``."""
    ws = _w_values(pt.q, max(1.0, abs(s2)), cfg.tol * 1e-3, cfg.max_terms)
    base = [w * s2 for w in ws]
    pows = list(base)
    scale = 1.0 if unscaled else PI**2 / 4
    total = 0j
    small = 0
    for p in range(1, cfg.max_terms + 1):
        if p > 1:
            pows = [a * b for a, b in zip(pows, base)]
        sp = sum(pows)
        sp1 = sum(a * w for a, w in zip(pows, ws))
        t = scale * (-2 * (2 * p + 1) * sp1 + 4 * p * sp)
        total += t
        small = small + 1 if abs(t) < cfg.tol * (1.0 + abs(total)) else 0
        if small >= 2:
            return total, p
    raise NoConvergence("p expansion", cfg.max_terms)


def wp_expansion(z: complex, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``p(z + tau) = e3 - sum_p a_2p sin^2p(pi z / 2)`` inside the strip."""
    pt = as_point(tau)
    z = complex(z)
    check_strip("wp_expansion", _strip_ratio(z, pt), cfg.strip_policy)
    e3 = WpParams.from_tau(pt, cfg).e3
    if z == 0:
        return e3
    s2 = cmath.sin(0.5 * PI * z) ** 2
    val, _ = _a_series(s2, pt, cfg)
    return e3 - val


def _lattice_offset(u: complex, pt: HalfPlanePoint) -> complex:
    """``u`` reduced by the nearest lattice point ``2m + 2n tau``."""
    n = round(u.imag / (2 * pt.tau.imag))
    r = u - 2 * n * pt.tau
    m = round(r.real / 2)
    return r - 2 * m


def wp_oracle(u: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, params: Optional[WpParams] = None) -> complex:
    """``p(u) = (1/4)[-4 eta - (log theta_1)''(u/2)]`` from termwise-differentiated series."""
    pt = as_point(tau)
    u = complex(u)
    if abs(_lattice_offset(u, pt)) < 1e-12:
        raise PoleAtLatticePoint(f"p has a pole at the lattice point u = {u}")
    prm = params or WpParams.from_tau(pt, cfg)
    v = 0.5 * u
    f0 = theta_fourier(1, v, pt, cfg)
    f1 = theta_fourier(1, v, pt, cfg, deriv=1)
    f2 = theta_fourier(1, v, pt, cfg, deriv=2)
    d2log = f2 / f0 - (f1 / f0) ** 2
    return 0.25 * (-4 * prm.eta - d2log)


def wp_lattice(u: complex, tau: TauLike, M: int = 40) -> complex:
    """Direct symmetric lattice sum over ``|m|, |n| <= M`` (loose oracle, error ~ 1/M^2)."""
    pt = as_point(tau)
    u = complex(u)
    rng = np.arange(-M, M + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    om = 2 * m + 2 * n * pt.tau
    mask = (m != 0) | (n != 0)
    om = om[mask]
    d = u - om
    if np.any(np.abs(d) < 1e-12) or u == 0:
        raise PoleAtLatticePoint(f"p has a pole at the lattice point u = {u}")
    return complex(1 / u**2 + np.sum(1 / d**2 - 1 / om**2))


def wp_addition_form(z: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, variant: str = "corrected") -> complex:
    """``p(z)`` from ``p(z + tau)`` through the addition theorem.

    ``corrected``: ``e3 + (g2 - 12 e3^2) / (pi^2 sum_p b_2p s^2p)``;
    ``printed``:   ``e3 - (g2 - 12 e3^2) / (2 sum_p b_2p s^2p)``,
    with ``b_2p`` the bracket of :func:`a2p_unscaled` and ``s = sin(pi z/2)``.
    """
    if variant not in ("corrected", "printed"):
        raise DomainError(f"unknown variant {variant!r}")
    pt = as_point(tau)
    z = complex(z)
    check_strip("wp_addition_form", _strip_ratio(z, pt), cfg.strip_policy)
    prm = WpParams.from_tau(pt, cfg)
    s2 = cmath.sin(0.5 * PI * z) ** 2
    if abs(s2) < 1e-300:
        raise DivisionByZero(f"wp_addition_form: denominator vanishes at z = {z}")
    den, _ = _a_series(s2, pt, cfg, unscaled=True)
    if den == 0:
        raise DivisionByZero(f"wp_addition_form: denominator vanishes at z = {z}")
    num = prm.g2 - 12 * prm.e3**2
    if variant == "corrected":
        return prm.e3 + num / (PI**2 * den)
    return prm.e3 - num / (2 * den)


# --- K(k) and Jacobi Zn ---------------------------------------------------------


def agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-16 * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def agm_K(k: float) -> float:
    """Complete elliptic integral of the first kind, classical normalisation."""
    if not (isinstance(k, (int, float)) and 0 < k < 1):
        raise DomainError(f"modulus must satisfy 0 < k < 1, got {k!r}")
    return PI / (2 * agm(1.0, math.sqrt((1 - k) * (1 + k))))


def modulus_from_tau(tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``k = theta_2(0)^2 / theta_3(0)^2``."""
    t2, t3, _ = null_values(tau, cfg)
    return t2**2 / t3**2


def K_from_tau(tau: TauLike, cfg: EvalConfig = DEFAULT, convention: str = "classical") -> complex:
    """K for the modulus of ``tau``: AGM for real k, ``(pi/2) theta_3(0)^2`` otherwise.

    ``convention="doubled"`` doubles it (the factor 2 in front of the integral).
    """
    if convention not in ("classical", "doubled"):
        raise DomainError(f"unknown K convention {convention!r}")
    k = modulus_from_tau(tau, cfg)
    if abs(k.imag) < 1e-14 * abs(k) and 0 < k.real < 1:
        K = complex(agm_K(k.real))
    else:
        K = 0.5 * PI * theta_fourier(3, 0, tau, cfg) ** 2
    return 2 * K if convention == "doubled" else K


def jacobi_zn(z: complex, tau: TauLike, cfg: EvalConfig = DEFAULT_WARN, route: str = "closed",
              convention: str = "classical") -> complex:
    """Jacobi zeta ``Zn(z) = d/dz log theta_4(z / 2K)``.

    ``closed``:  ``(pi/2K) sin(2 pi v) sum_k 1/(sin^2(pi v) - sin^2((k+1/2) pi tau))``, ``v = z/2K``;
    ``fourier``: ``(2 pi/K) sum_n q^n/(1-q^(2n)) sin(n pi z / K)``.
    """
    pt = as_point(tau)
    z = complex(z)
    K = K_from_tau(pt, cfg, convention)
    q = pt.q
    if route == "closed":
        v = z / (2 * K)
        sv2 = cmath.sin(PI * v) ** 2
        check_strip("jacobi_zn closed", math.sqrt(abs(sv2)) / abs(cmath.sin(0.5 * PI * pt.tau)), cfg.strip_policy)
        total = 0j
        small = 0
        for k in range(cfg.max_terms):
            sk2 = cmath.sin((k + 0.5) * PI * pt.tau) ** 2
            t = 1.0 / (sv2 - sk2)
            total += t
            small = small + 1 if abs(t) <= cfg.tol * abs(total) else 0
            if small >= 2:
                return PI / (2 * K) * cmath.sin(2 * PI * v) * total
        raise NoConvergence("jacobi_zn closed", cfg.max_terms)
    if route == "fourier":
        total = 0j
        qn = 1.0 + 0j
        small = 0
        for n in range(1, cfg.max_terms + 1):
            qn *= q
            t = qn / (1.0 - qn * qn) * cmath.sin(n * PI * z / K)
            total += t
            small = small + 1 if abs(t) < cfg.tol * (1.0 + abs(total)) else 0
            if small >= 2:
                return 2 * PI / K * total
        raise NoConvergence("jacobi_zn fourier", cfg.max_terms)
    raise DomainError(f"unknown Zn route {route!r}")


def elliptic_checks(tau: TauLike, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    """Residual records for the elliptic identities at one tau (used by ``verify elliptic``)."""
    pt = as_point(tau)
    prm = WpParams.from_tau(pt, cfg)
    t2, t3, t4 = null_values(pt, cfg)
    par = {"tau": pt.tau}
    e3_ref = wp_oracle(pt.tau, pt, cfg, prm)
    # e3 can vanish (square lattice), so scale by the largest branch value
    e_scale = max(abs(prm.e1), abs(prm.e2), abs(prm.e3))
    out = [
        Residual("wp.e3_oracle", par, prm.e3, e3_ref, abs(prm.e3 - e3_ref) / e_scale, 1e-10),
        Residual.compare("wp.a2_seed", par, a2p_closed(1, pt, cfg), prm.a2_seed, 1e-9),
        Residual.compare("wp.a2_theta_form", par, a2p_closed(1, pt, cfg), -(PI**2) / 4 * t2**4 * t3**4, 1e-9),
        Residual.compare("wp.a2_theta_form.printed_sign", par, a2p_closed(1, pt, cfg), PI**2 / 4 * t2**4 * t3**4,
                         report_only=True),
        Residual.compare("wp.g2_theta_form", par, prm.g2, PI**4 / 24 * (t2**8 + t3**8 + t4**8), 1e-10),
        Residual.compare("wp.a2p_unscaled.printed", par, a2p_unscaled(1, pt, cfg), prm.a2_seed, report_only=True),
    ]
    for p, (r, s) in enumerate(a2p_recursion_residuals(pt, 5, cfg), start=1):
        out.append(Residual("wp.a2p_recursion", {"p": p, "tau": pt.tau}, None, None, r / s if s else 0.0, 1e-7))
    ratios = bridge_ratios(pt, 6, cfg)
    spread = max(abs(r - ratios[0]) for r in ratios) / abs(ratios[0])
    out.append(Residual("wp.bridge_ratio_constant", par, ratios[0], 4 / PI**2, spread, 1e-6,
                        note="ratio value %.12g" % ratios[0].real))
    out.append(Residual.compare("wp.bridge_ratio.printed_3_over_pi2", par, ratios[0], 3 / PI**2, report_only=True))
    for z in (0.3, 0.5 + 0.2j):
        try:
            out.append(Residual.compare("wp.expansion", {"z": complex(z), "tau": pt.tau}, wp_expansion(z, pt, cfg),
                                        wp_oracle(z + pt.tau, pt, cfg, prm), 1e-8))
        except OutsideStrip:
            pass
    z = 0.4
    try:
        ref = wp_oracle(z, pt, cfg, prm)
        out.append(Residual.compare("wp.addition_form", {"z": z, "tau": pt.tau}, wp_addition_form(z, pt, cfg), ref, 1e-8))
        out.append(Residual.compare("wp.addition_form.printed", {"z": z, "tau": pt.tau},
                                    wp_addition_form(z, pt, cfg, "printed"), ref, report_only=True))
    except OutsideStrip:
        pass
    return out
