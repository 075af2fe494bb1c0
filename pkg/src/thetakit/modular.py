"""Transformation laws of the c_2p family, each as an executable residual check.

Infinite sums over p with binomial weights use one truncation rule: stop
after three consecutive addends below ``tol * |partial sum|`` once ``p``
exceeds twice the lower index of the sum (binomial weights are unimodal,
so stopping before the peak would be premature).

All these sums need ``c_2p(tau)`` to decay in p, i.e. ``|sin(pi tau / 2)| > 1``;
outside that region they raise NoConvergence instead of diverging quietly.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .config import DEFAULT, EvalConfig, TauLike, as_point
from .errors import DomainError, NoConvergence
from .qseries import QSeries, divisors
from .report import Residual, relative_gap
from .theta import (
    c2p_closed,
    c2p_power_sum,
    power_sum_in_strip,
    theta_fourier,
    dedekind_eta,
)

PI = math.pi


def decay_ratio(tau: TauLike) -> float:
    """``|w_0| = 1/|sin(pi tau/2)|^2``; c_2p ~ |w_0|^p for large p."""
    return 1.0 / abs(cmath.sin(0.5 * PI * as_point(tau).tau)) ** 2


def weighted_sum(weight: Callable[[int], float], start: int, tau: TauLike, cfg: EvalConfig = DEFAULT,
                 floor: int = 1) -> complex:
    """``sum_{p >= start} weight(p) c_2p(tau)`` with the three-small-terms rule past ``p > 2*floor``."""
    pt = as_point(tau)
    if decay_ratio(pt) >= 1.0:
        raise NoConvergence(f"weighted c_2p sum at tau={pt.tau} (|sin(pi tau/2)| <= 1)", 0)
    total = 0j
    small = 0
    for p in range(start, start + cfg.max_terms):
        w = weight(p)
        if w == 0:
            t = 0j
        else:
            c = c2p_closed(p, pt, cfg)
            if c == 0:  # underflow: every later term is smaller still
                small = 3
                t = 0j
            else:
                t = w * c
        total += t
        if abs(t) <= cfg.tol * abs(total):
            small += 1
        else:
            small = 0
        if small >= 3 and p > 2 * floor:
            return total
    raise NoConvergence("weighted c_2p sum", cfg.max_terms)


# --- tau -> tau + 2, tau -> tau + 1 -------------------------------------------


def check_period2(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> float:
    pt = as_point(tau)
    return abs(c2p_closed(p, pt + 2, cfg) - c2p_closed(p, pt, cfg))


def shift1_rhs(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``(-1)^p sum_{k>=p} C(k,p) c_2k(tau)``."""
    return (-1) ** p * weighted_sum(lambda k: math.comb(k, p), p, tau, cfg, floor=p)


def check_shift1(p_max: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-8) -> List[Residual]:
    pt = as_point(tau)
    out = []
    for p in range(1, p_max + 1):
        lhs = c2p_closed(p, pt + 1, cfg)
        out.append(Residual.compare("shift1", {"p": p, "tau": pt.tau}, lhs, shift1_rhs(p, pt, cfg), tolerance))
    return out


def check_shift1_twice(p_max: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-6) -> List[Residual]:
    """Compose the tau+1 law with itself and compare with c_2p(tau+2) = c_2p(tau)."""
    pt = as_point(tau)
    if decay_ratio(pt + 1) >= 1.0:
        raise NoConvergence("double tau+1 application", 0)
    cache: Dict[int, complex] = {}

    def shifted(k: int) -> complex:
        if k not in cache:
            cache[k] = shift1_rhs(k, pt, cfg)
        return cache[k]

    out = []
    for p in range(1, p_max + 1):
        total = 0j
        small = 0
        for k in range(p, p + cfg.max_terms):
            t = math.comb(k, p) * shifted(k)
            total += t
            small = small + 1 if abs(t) <= cfg.tol * abs(total) else 0
            if small >= 3 and k > 2 * p:
                break
        else:
            raise NoConvergence("double tau+1 application", cfg.max_terms)
        rhs = (-1) ** p * total
        out.append(Residual.compare("shift1_twice", {"p": p, "tau": pt.tau}, c2p_closed(p, pt, cfg), rhs, tolerance,
                                    note="period2 residual %.3g" % check_period2(p, pt, cfg)))
    return out


# --- modular group displays ---------------------------------------------------


def _tau_plus1_qform(p: int, tau: TauLike, cfg: EvalConfig) -> complex:
    """``-(1/p) sum_k [4 q^(2k+1) / (1 + q^(2k+1))^2]^p``."""
    q = as_point(tau).q
    total = 0j
    qk = q
    small = 0
    for _ in range(cfg.max_terms):
        t = (4.0 * qk / (1.0 + qk) ** 2) ** p
        total += t
        small = small + 1 if abs(t) <= cfg.tol * abs(total) or t == 0 else 0
        if small >= 2:
            return -total / p
        qk *= q * q
    raise NoConvergence("tau+1 q-form", cfg.max_terms)


def modular_group_forms(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-10) -> List[Residual]:
    """Modular-group relations for c_2p, one residual each.

    Asserted: the tau+1 q-form and the theta_3'' form of c_2(tau+1).
    Report-only: the -1/tau displays, the sum of k c_2k, and the cos-sum relation.
    """
    pt = as_point(tau)
    t = pt.tau
    q = pt.q
    par = {"p": p, "tau": t}
    out = [Residual.compare("modgroup.tau_plus_1_qform", par, c2p_closed(p, pt + 1, cfg), _tau_plus1_qform(p, pt, cfg), tolerance)]
    if p == 1:
        t3 = theta_fourier(3, 0, pt, cfg)
        t3pp = theta_fourier(3, 0, pt, cfg, deriv=2)
        out.append(Residual.compare("modgroup.c2_tau_plus_1_theta3", {"tau": t}, c2p_closed(1, pt + 1, cfg),
                                    t3pp / (2 * PI**2 * t3), tolerance))

    # -1/tau display (general p)
    inv = as_point(-1.0 / t)
    lhs = 2.0 / t**2 * c2p_closed(p, inv, cfg)
    s = 0j
    q2 = q * q
    qk = q2
    for _ in range(cfg.max_terms):
        term = (qk / (1.0 + qk)) ** p
        s += term
        if abs(term) <= cfg.tol * abs(s):
            break
        qk *= q2
    rhs = -1.0 - (-1) ** p * 2.0 ** (p + 1) / (2 * p) * s
    out.append(Residual.compare("modgroup.minus_inv_tau", par, lhs, rhs, report_only=True))
    if p == 1:
        s8 = 0j
        qk = q2
        for _ in range(cfg.max_terms):
            term = qk / (1.0 + qk)
            s8 += term
            if abs(term) <= cfg.tol * abs(s8):
                break
            qk *= q2
        t2 = theta_fourier(2, 0, pt, cfg)
        t2pp = theta_fourier(2, 0, pt, cfg, deriv=2)
        out.append(Residual.compare("modgroup.c2_minus_inv_tau", {"tau": t}, lhs, -1.0 - 8.0 * s8, report_only=True))
        out.append(Residual.compare("modgroup.c2_minus_inv_tau_theta2", {"tau": t}, -1.0 - 8.0 * s8,
                                    t2pp / (2 * PI**2 * t2), report_only=True))
        # -sum k c_2k  vs  sum n (-1)^n q^n / (1 - q^(2n))
        try:
            lhs_k = -weighted_sum(lambda k: k, 1, pt, cfg)
        except NoConvergence:
            lhs_k = complex("nan")
        rhs_k = 0j
        qn = 1.0 + 0j
        for n in range(1, cfg.max_terms + 1):
            qn *= q
            term = n * (-1) ** n * qn / (1.0 - qn * qn)
            rhs_k += term
            if abs(term) <= cfg.tol * abs(rhs_k):
                break
        out.append(Residual.compare("modgroup.sum_k_c2k", {"tau": t}, lhs_k, rhs_k, report_only=True))
        # sum c_2p cos^2p(pi tau/2)  vs  sum c_2p(tau+1) [1 + sin^2p(pi tau/2)]
        cz = cmath.cos(0.5 * PI * t) ** 2
        sz = cmath.sin(0.5 * PI * t) ** 2
        lhs_c = c2p_power_sum(cz, pt, cfg)
        rhs_c = c2p_power_sum(1.0, pt + 1, cfg) + c2p_power_sum(sz, pt + 1, cfg)
        out.append(Residual.compare("modgroup.cos_sum", {"tau": t}, lhs_c, rhs_c, report_only=True))
    return out


# --- Landen -------------------------------------------------------------------


def landen_odd_rhs(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT, printed: bool = False) -> complex:
    """``sum_{k>=2p} 2^(1-k) C(k,2p) c_2k(tau)`` (``printed=True``: weight ``2^(-k)``)."""
    shift = 0 if printed else 1
    return weighted_sum(lambda k: math.comb(k, 2 * p) * 2.0 ** (shift - k), 2 * p, tau, cfg, floor=2 * p)


def landen_even_weight(p: int, m: int) -> int:
    return sum(math.comb(k, p) * math.comb(m, 2 * k) for k in range(p, m // 2 + 1))


def landen_even_rhs(p: int, tau: TauLike, cfg: EvalConfig = DEFAULT, printed: bool = False) -> complex:
    """``(-1)^p sum_{m>=2p} [sum_k C(k,p) C(m,2k)] 2^(1-m) c_2m(tau)``."""
    shift = 0 if printed else 1
    return (-1) ** p * weighted_sum(lambda m: landen_even_weight(p, m) * 2.0 ** (shift - m), 2 * p, tau, cfg, floor=2 * p)


def landen_c2p(p_max: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-8,
               printed: bool = False) -> Tuple[List[Residual], List[Residual]]:
    """Residuals for c_2p(2 tau + 1) and c_2p(2 tau) from the c_2k(tau).

    ``printed=True`` uses the ``2^(-k)`` weights as usually printed; these
    are off by exactly a factor 2 and are returned as report-only entries.
    """
    pt = as_point(tau)
    tag = ".printed" if printed else ""
    a, b = [], []
    for p in range(1, p_max + 1):
        par = {"p": p, "tau": pt.tau}
        a.append(Residual.compare("landen.c2p_2tau_plus_1" + tag, par, c2p_closed(p, 2 * pt + 1, cfg),
                                  landen_odd_rhs(p, pt, cfg, printed), tolerance, report_only=printed))
        b.append(Residual.compare("landen.c2p_2tau" + tag, par, c2p_closed(p, 2 * pt, cfg),
                                  landen_even_rhs(p, pt, cfg, printed), tolerance, report_only=printed))
    return a, b


def landen_theta_identity(v: complex, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-10,
                          exp_tolerance: float = 1e-8) -> List[Residual]:
    """Landen functional equation (strip-free) and the exponent identities (strip-policed)."""
    pt = as_point(tau)
    t2 = 2 * pt
    v = complex(v)
    par = {"v": v, "tau": pt.tau}
    f = lambda k, x, tt: theta_fourier(k, x, tt, cfg)
    t40_2 = f(4, 0, t2)
    out = [
        Residual.compare("landen.theta4_functional", par, f(4, 2 * v, t2), f(3, v, pt) * f(4, v, pt) / t40_2, tolerance),
        Residual.compare("landen.theta3_functional", par, f(3, 2 * v, t2),
                         f(3, v + 0.25, pt) * f(4, v + 0.25, pt) / t40_2, tolerance),
        Residual.compare("landen.theta3_functional.printed_33", par, f(3, 2 * v, t2),
                         f(3, v + 0.25, pt) ** 2 / t40_2, report_only=True),
        Residual.compare("landen.theta3_functional.printed_44", par, f(3, 2 * v, t2),
                         f(4, v + 0.25, pt) ** 2 / t40_2, report_only=True),
    ]
    S = lambda x2, tt: power_sum_in_strip("landen exponent", x2, tt, cfg)
    sin = lambda x: cmath.sin(PI * x) ** 2
    cos = lambda x: cmath.cos(PI * x) ** 2
    out.append(Residual.compare("landen.theta4_exponent", par, f(4, 2 * v, t2), t40_2 * cmath.exp(S(sin(2 * v), t2)),
                                tolerance))
    const_2t = S(1.0, t2)
    for shift, name, s_arg, c_arg in ((0.0, "", sin, cos), (0.25, "_quarter", cos, sin)):
        u = v + shift
        left = S(sin(u), pt) + S(cos(u), pt) - S(1.0, pt)
        mid = S(s_arg(2 * v), t2)
        right = S(c_arg(2 * v), 2 * pt + 1)
        out.append(Residual.compare("landen.exponent_split" + name, par, left, mid, exp_tolerance))
        out.append(Residual.compare("landen.exponent_shift" + name, par, mid, right + const_2t, exp_tolerance))
        out.append(Residual.compare("landen.exponent_shift" + name + ".printed", par, mid, right, report_only=True))
    return out


def eta_quotient_landen(tau: TauLike, cfg: EvalConfig = DEFAULT) -> Tuple[complex, complex]:
    """``(eta(2 tau)/eta(tau), 2^(-1/3) q^(1/12) exp sum (c_2p/3)[cos^2p(pi tau/2) - 1/2])``."""
    pt = as_point(tau)
    lhs = dedekind_eta(2 * pt, cfg) / dedekind_eta(pt, cfg)
    cz = cmath.cos(0.5 * PI * pt.tau) ** 2
    expo = (c2p_power_sum(cz, pt, cfg) - 0.5 * c2p_power_sum(1.0, pt, cfg)) / 3.0
    return lhs, 2.0 ** (-1.0 / 3.0) * pt.qpow(1.0 / 12.0) * cmath.exp(expo)


def eta_quotient_landen_printed(tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """Right-hand side with ``[cos^2p - 1]`` as usually printed (report-only)."""
    pt = as_point(tau)
    cz = cmath.cos(0.5 * PI * pt.tau) ** 2
    expo = (c2p_power_sum(cz, pt, cfg) - c2p_power_sum(1.0, pt, cfg)) / 3.0
    return 2.0 ** (-1.0 / 3.0) * pt.qpow(1.0 / 12.0) * cmath.exp(expo)


# --- higher order -------------------------------------------------------------


def ho_expression(k: int, tau: TauLike, cfg: EvalConfig = DEFAULT) -> complex:
    """``k (-1)^(k+1) sum_{p>=k} 2^(-2p) C(2p, p-k) c_2p(tau)``."""
    s = weighted_sum(lambda p: math.comb(2 * p, p - k) * 4.0 ** (-p), k, tau, cfg, floor=k)
    return k * (-1) ** (k + 1) * s


def base_identity(m: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-9) -> List[Residual]:
    """``q^m/(1-q^(2m)) = m(-1)^(m+1) sum 2^(-2p) C(2p,p-m) c_2p(tau) = sum 2^(-2p) C(2p,p-1) c_2p(m tau)``.

    The printed version carries an extra factor 1/2 on the Lambert term;
    it is reported alongside.
    """
    pt = as_point(tau)
    q = pt.q
    lam = q**m / (1.0 - q ** (2 * m))
    left = ho_expression(m, pt, cfg)
    right = ho_expression(1, m * pt, cfg)
    par = {"m": m, "tau": pt.tau}
    return [
        Residual.compare("base_identity.lambert", par, lam, left, tolerance),
        Residual.compare("base_identity.scaled", par, left, right, tolerance),
        Residual.compare("base_identity.lambert.printed_half", par, 0.5 * lam, left, report_only=True),
    ]


def higher_order_identity(n: int, k: int, tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-8) -> List[Residual]:
    """Pairwise residuals among the four expressions and the Lambert value ``q^(nk)/(1-q^(2nk))``."""
    if n < 1 or k < 1:
        raise DomainError("n and k must be >= 1")
    pt = as_point(tau)
    e1 = ho_expression(k, n * pt, cfg)
    e2 = ho_expression(n, k * pt, cfg)
    e3 = ho_expression(1, (n * k) * pt, cfg)
    e4 = ho_expression(n * k, pt, cfg)
    q = pt.q
    lam = q ** (n * k) / (1.0 - q ** (2 * n * k))
    par = {"n": n, "k": k, "tau": pt.tau}
    names = {"k_at_n": e1, "n_at_k": e2, "one_at_nk": e3, "nk_at_one": e4, "lambert": lam}
    keys = list(names)
    out = []
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            out.append(Residual.compare(f"higher_order.{keys[i]}~{keys[j]}", par, names[keys[i]], names[keys[j]], tolerance))
    return out


# --- divisor form ---------------------------------------------------------------


def divisor_form_c2p(p: int, order: int) -> QSeries:
    """``(-1)^(p+1) 2^(2p)/(2p)! sum_n (A_n + B_n) q^n``,
    ``A_n + B_n = sum_{d|n, d>=p} (1 + (-1)^(n/d-1)) (d+p-1)!/(d-p)!``."""
    if p < 1:
        raise DomainError("p must be >= 1")
    lead = Fraction((-1) ** (p + 1) * 2 ** (2 * p), math.factorial(2 * p))
    cs = [Fraction(0)] * (order + 1)
    for n in range(p, order + 1):
        s = 0
        for d in divisors(n):
            if d >= p and (n // d) % 2 == 1:
                s += 2 * (math.factorial(d + p - 1) // math.factorial(d - p))
        cs[n] = lead * s
    return QSeries(tuple(cs), order)


def c2_divisor_rule(m: int) -> int:
    """Coefficient of q^m in c_2: ``4 * sum_{d|m, m/d odd} d``."""
    return 4 * sum(d for d in divisors(m) if (m // d) % 2 == 1)
