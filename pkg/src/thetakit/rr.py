"""Rogers functions G, H and the Rogers-Ramanujan continued fraction R(q).

Every route returns an :class:`RRValue` ``q**(2/5) * body``.  The prefactor
stays symbolic; numerically it is ``exp(2 i pi tau / 5)``, single-valued in tau.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .config import DEFAULT, EvalConfig, HalfPlanePoint, TauLike, as_point, check_strip
from .errors import DivisionByZero, DomainError, NoConvergence
from .qseries import QSeries, qs_exp, qs_inv, qs_mul, qs_product
from .report import Residual
from .theta import c2p_power_sum, c2p_resummed, strip_ratio_x2, theta_fourier

PI = math.pi
TWO_FIFTHS = Fraction(2, 5)


@dataclass(frozen=True)
class RRValue:
    prefactor_exponent: Fraction
    body: Union[complex, QSeries]
    tau: Optional[HalfPlanePoint] = None
    route: str = ""

    @property
    def is_formal(self) -> bool:
        return isinstance(self.body, QSeries)

    @property
    def value(self) -> complex:
        """``q**prefactor_exponent * body`` with ``q**r = exp(i pi r tau)``."""
        if self.is_formal or self.tau is None:
            raise DomainError("value needs a numeric body and tau")
        return self.tau.qpow(self.prefactor_exponent) * self.body


# --- Rogers functions -----------------------------------------------------------


def _rogers_sum(order: int, extra: int) -> QSeries:
    """``sum_n q^(2n^2 + 2n*extra) / (q^2; q^2)_n``."""
    total = QSeries.one(order)
    inv_den = QSeries.one(order)
    n = 1
    while 2 * n * n + 2 * n * extra <= order:
        geo = QSeries.from_dict({2 * n * j: 1 for j in range(order // (2 * n) + 1)}, order)
        inv_den = qs_mul(inv_den, geo)
        total = total + inv_den.shift(2 * n * n + 2 * n * extra)
        n += 1
    return total


def _inverse_euler(order: int, starts) -> QSeries:
    """``1 / prod_{s in starts} prod_{k>=0} (1 - q^(s + 10k))``."""
    exps = sorted(e for s in starts for e in range(s, order + 1, 10))
    prod = qs_product(((e, QSeries.from_dict({0: 1, e: -1}, order)) for e in exps), order)
    return qs_inv(prod)


def rogers_G(order: int, form: str = "sum") -> QSeries:
    """``G = sum q^(2n^2)/(q^2;q^2)_n``; ``form="product"`` gives ``1/((q^2;q^10)(q^8;q^10))``."""
    if order < 0:
        raise DomainError("order must be >= 0")
    if form == "sum":
        return _rogers_sum(order, 0)
    if form == "product":
        return _inverse_euler(order, (2, 8))
    raise DomainError(f"unknown form {form!r}")


def rogers_H(order: int, form: str = "sum") -> QSeries:
    """``H = sum q^(2n(n+1))/(q^2;q^2)_n``; ``form="product"`` gives ``1/((q^4;q^10)(q^6;q^10))``."""
    if order < 0:
        raise DomainError("order must be >= 0")
    if form == "sum":
        return _rogers_sum(order, 1)
    if form == "product":
        return _inverse_euler(order, (4, 6))
    raise DomainError(f"unknown form {form!r}")


def rogers_GH_numeric(tau: TauLike, cfg: EvalConfig = DEFAULT):
    """Numeric ``(G, H)`` from the sum forms."""
    q2 = as_point(tau).q ** 2
    G = H = 1 + 0j
    poch = 1 + 0j
    for n in range(1, cfg.max_terms):
        poch *= 1 - q2**n
        tg = q2 ** (n * n) / poch
        th = tg * q2**n
        G += tg
        H += th
        if abs(tg) < cfg.tol * 1e-2 * abs(G) and abs(th) < cfg.tol * 1e-2 * abs(H):
            return G, H
    raise NoConvergence("Rogers sums", cfg.max_terms)


def rr_quotient_formal(order: int) -> RRValue:
    """``q^(2/5) H/G`` with both from their sum forms."""
    return RRValue(TWO_FIFTHS, qs_mul(rogers_H(order), qs_inv(rogers_G(order))), route="H/G")


def rr_quotient_numeric(tau: TauLike, cfg: EvalConfig = DEFAULT) -> RRValue:
    G, H = rogers_GH_numeric(tau, cfg)
    return RRValue(TWO_FIFTHS, H / G, as_point(tau), "H/G")


# --- continued fraction -----------------------------------------------------------


def default_depth(order: int) -> int:
    return max(2 * order, 40)


def rr_cf(tau: Optional[TauLike] = None, depth: Optional[int] = None, order: Optional[int] = None) -> RRValue:
    """Depth-D convergent ``q^(2/5) / (1 + q^2/(1 + q^4/(... 1 + q^(2D))))``, bottom-up.

    Pass ``order`` for a formal body (then ``depth`` defaults to
    ``max(2*order, 40)``), or ``tau`` for a numeric one.
    """
    if (tau is None) == (order is None):
        raise DomainError("give exactly one of tau (numeric) or order (formal)")
    if order is not None:
        D = default_depth(order) if depth is None else depth
        if D < 1:
            raise DomainError("depth must be >= 1")
        t = QSeries.one(order)
        for j in range(D, 0, -1):
            t = 1 + qs_mul(QSeries.monomial(2 * j, order), qs_inv(t))
        return RRValue(TWO_FIFTHS, qs_inv(t), route="cf")
    D = 200 if depth is None else depth
    if D < 1:
        raise DomainError("depth must be >= 1")
    pt = as_point(tau)
    q2 = pt.q**2
    t = 1 + 0j
    for j in range(D, 0, -1):
        if t == 0:
            raise DivisionByZero("rr_cf: vanishing partial denominator")
        t = 1 + q2**j / t
    if t == 0:
        raise DivisionByZero("rr_cf: vanishing partial denominator")
    return RRValue(TWO_FIFTHS, 1 / t, pt, "cf")


# --- product ------------------------------------------------------------------------


def rr_product(tau: Optional[TauLike] = None, order: Optional[int] = None, cfg: EvalConfig = DEFAULT) -> RRValue:
    """``q^(2/5) prod_k (1-q^(10k-2))(1-q^(10k-8)) / ((1-q^(10k-4))(1-q^(10k-6)))``."""
    if (tau is None) == (order is None):
        raise DomainError("give exactly one of tau (numeric) or order (formal)")
    if order is not None:
        if order < 0:
            raise DomainError("order must be >= 0")
        num = qs_inv(_inverse_euler(order, (2, 8)))
        return RRValue(TWO_FIFTHS, qs_mul(num, _inverse_euler(order, (4, 6))), route="product")
    pt = as_point(tau)
    q = pt.q
    body = 1 + 0j
    for k in range(1, cfg.max_terms):
        q10 = q ** (10 * k)
        f = (1 - q10 * q**-2) * (1 - q10 * q**-8) / ((1 - q10 * q**-4) * (1 - q10 * q**-6))
        body *= f
        if abs(f - 1) < cfg.tol * 1e-2:
            return RRValue(TWO_FIFTHS, body, pt, "product")
    raise NoConvergence("rr_product", cfg.max_terms)


# --- exponential forms --------------------------------------------------------------


def _exp_formal_exponent(order: int, variant: str, weight: str) -> QSeries:
    """``sum_{p,k} (1/p) q^(2p w) [(q^2 -+ q)^2p - (q^3 -+ 1)^2p] / (q^(5(2k+1)) -+ 1)^2p``.

    ``weight="corrected"`` uses ``w = 5k + 1``; ``weight="printed"`` uses ``w = k + 1``.
    """
    s = -1 if variant == "thm61_sin" else 1
    total = QSeries.zero(order)
    a = QSeries.from_dict({1: s, 2: 1}, order)  # q^2 -+ q
    b = QSeries.from_dict({0: s, 3: 1}, order)  # q^3 -+ 1
    p = 1
    while 2 * p <= order:
        a2p = a ** (2 * p)
        b2p = b ** (2 * p)
        diff = a2p - b2p
        k = 0
        while True:
            w = 2 * p * (5 * k + 1 if weight == "corrected" else k + 1)
            if w > order:
                break
            den = QSeries.from_dict({0: s, 5 * (2 * k + 1): 1}, order) ** (2 * p)
            total = total + qs_mul(diff, qs_inv(den)).shift(w) * Fraction(1, p)
            k += 1
        p += 1
    return total


def rr_exp(tau: Optional[TauLike] = None, cfg: EvalConfig = DEFAULT, variant: str = "thm61_sin",
           order: Optional[int] = None, weight: str = "corrected") -> RRValue:
    """Exponential form of R built from the theta_4(., 5 tau) expansion.

    ``thm61_sin``: exponent ``-sum_p c_2p(5 tau) [sin^2p(pi tau/2) - sin^2p(3 pi tau/2)]``;
    ``cor62_cos``: the same with cos and ``c_2p(5 tau + 1)`` (denominators cos((k+1/2) 5 pi tau)).
    Formal mode exponentiates the q-form exponent with ``qs_exp``; its
    weight is ``q^(2p(5k+1))`` (``weight="printed"`` gives ``q^(2p(k+1))``).
    """
    if variant not in ("thm61_sin", "cor62_cos"):
        raise DomainError(f"unknown variant {variant!r}")
    if weight not in ("corrected", "printed"):
        raise DomainError(f"unknown weight {weight!r}")
    if (tau is None) == (order is None):
        raise DomainError("give exactly one of tau (numeric) or order (formal)")
    if order is not None:
        return RRValue(TWO_FIFTHS, qs_exp(_exp_formal_exponent(order, variant, weight)), route=variant)
    pt = as_point(tau)
    t = pt.tau
    if variant == "thm61_sin":
        x1, x3, big = cmath.sin(0.5 * PI * t) ** 2, cmath.sin(1.5 * PI * t) ** 2, 5 * t
    else:
        x1, x3, big = cmath.cos(0.5 * PI * t) ** 2, cmath.cos(1.5 * PI * t) ** 2, 5 * t + 1
    ratio = max(strip_ratio_x2(x1, big), strip_ratio_x2(x3, big))
    check_strip(f"rr_exp {variant}", ratio, cfg.strip_policy)
    expo = -(c2p_power_sum(x1, big, cfg) - c2p_power_sum(x3, big, cfg))
    return RRValue(TWO_FIFTHS, cmath.exp(expo), pt, variant)


# --- theta quotients ---------------------------------------------------------------


def rr_theta_quotient(tau: TauLike, cfg: EvalConfig = DEFAULT, route: str = "theta4") -> RRValue:
    """``theta4``: ``q^(2/5) theta_4(3tau/2, 5tau) / theta_4(tau/2, 5tau)``;
    ``liu_theta1``: ``q^(-3/5) theta_1(tau, 5tau) / theta_1(2tau, 5tau)``.
    """
    pt = as_point(tau)
    t = pt.tau
    big = 5 * t
    if route == "theta4":
        body = theta_fourier(4, 1.5 * t, big, cfg) / theta_fourier(4, 0.5 * t, big, cfg)
    elif route == "liu_theta1":
        # move q^(-3/5) = q^(2/5) q^(-1) so the body tends to 1
        body = theta_fourier(1, t, big, cfg) / theta_fourier(1, 2 * t, big, cfg) / pt.q
    else:
        raise DomainError(f"unknown route {route!r}")
    return RRValue(TWO_FIFTHS, body, pt, route)


def rr_value(tau: TauLike, route: str = "product", cfg: EvalConfig = DEFAULT) -> RRValue:
    """Dispatch for the numeric routes: cf, product, thm61_sin, cor62_cos, theta4, liu_theta1, H/G."""
    if route == "cf":
        return rr_cf(tau)
    if route == "product":
        return rr_product(tau, cfg=cfg)
    if route in ("thm61_sin", "cor62_cos"):
        return rr_exp(tau, cfg, route)
    if route in ("theta4", "liu_theta1"):
        return rr_theta_quotient(tau, cfg, route)
    if route == "H/G":
        return rr_quotient_numeric(tau, cfg)
    raise DomainError(f"unknown route {route!r}")


NUMERIC_ROUTES = ("cf", "product", "thm61_sin", "cor62_cos", "theta4", "liu_theta1", "H/G")


# --- modular behaviour -------------------------------------------------------------


def _minus_inv_exp_display(tau: complex, cfg: EvalConfig) -> complex:
    """The printed exp-sum display for R(-1/tau), resummed over p."""
    a = cmath.sin(PI * (tau - 4) / 10) ** 2
    b = cmath.sin(PI * (tau - 2) / 10) ** 2
    # sum_{p,k} (1/p)(a^p - b^p)/s_k^2p  = -(sum_k log(1 - a/s_k^2) - log(1 - b/s_k^2))
    return cmath.exp(1j * PI / 5 - c2p_resummed(a, tau / 5, cfg) + c2p_resummed(b, tau / 5, cfg))


def rr_modular_checks(tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-9) -> List[Residual]:
    pt = as_point(tau)
    t = pt.tau
    par = {"tau": t}
    R = rr_theta_quotient(pt, cfg).value
    R1 = rr_theta_quotient(t + 1, cfg).value
    rot = cmath.exp(2j * PI / 5)
    out = [Residual.compare("rr.shift1", par, R1, rot * R, tolerance)]
    R5 = rr_theta_quotient(t + 5, cfg).value
    out.append(Residual.compare("rr.shift1_fivefold", par, R5, rot**5 * R, 1e-8))
    # -1/tau: the displays are evaluated as printed and only reported
    Rm = rr_theta_quotient(-1 / t, cfg).value
    b = cmath.sin(PI * (t - 2) / 10) ** 2
    ratio = max(strip_ratio_x2(cmath.sin(PI * (t - 4) / 10) ** 2, t / 5), strip_ratio_x2(b, t / 5))
    out.append(Residual.compare("rr.minus_inverse.exp_display", par, Rm, _minus_inv_exp_display(t, cfg),
                                report_only=True, note="p-sum resummed over k; strip ratio %.3g" % ratio))
    th3 = cmath.exp(1j * PI / 5) * theta_fourier(3, (3 + t) / 10, t / 5, cfg) / theta_fourier(3, (1 + t) / 10 * t, t / 5, cfg)
    out.append(Residual.compare("rr.minus_inverse.theta3_display", par, Rm, th3, report_only=True))
    th4 = cmath.exp(1j * PI / 5) * theta_fourier(4, (t - 2) / 10, t / 5, cfg) / theta_fourier(4, (t - 4) / 10 * t, t / 5, cfg)
    out.append(Residual.compare("rr.minus_inverse.theta4_display", par, Rm, th4, report_only=True))
    return out


def rr_route_checks(tau: TauLike, cfg: EvalConfig = DEFAULT, tolerance: float = 1e-9) -> List[Residual]:
    """Every numeric route against the product."""
    pt = as_point(tau)
    ref = rr_product(pt, cfg=cfg).value
    return [Residual.compare("rr.route_vs_product", {"route": r, "tau": pt.tau}, rr_value(pt, r, cfg).value, ref,
                             tolerance) for r in NUMERIC_ROUTES if r != "product"]


def first_mismatch(a: QSeries, b: QSeries) -> Optional[int]:
    """Lowest exponent where the two series differ, or None."""
    n = min(a.order, b.order)
    for k in range(n + 1):
        if a[k] != b[k]:
            return k
    return None


def rr_formal_checks(order: int = 40) -> List[Residual]:
    """Coefficient-exact comparisons; residual is 0 (equal) or 1 (differs), mismatch index in ``extra``."""
    prod = rr_product(order=order).body
    bodies = {
        "cf": rr_cf(order=order).body,
        "H/G": rr_quotient_formal(order).body,
        "thm61_sin": rr_exp(order=order).body,
        "cor62_cos": rr_exp(order=order, variant="cor62_cos").body,
    }
    out = []
    for name, body in bodies.items():
        m = first_mismatch(body, prod)
        out.append(Residual("rr.formal_vs_product", {"route": name, "order": order}, None, None,
                            0.0 if m is None else 1.0, 0.5, extra={"first_mismatch": m}))
    printed = rr_exp(order=order, weight="printed").body
    m = first_mismatch(printed, prod)
    out.append(Residual("rr.formal_vs_product.printed_weight", {"order": order}, None, None,
                        0.0 if m is None else 1.0, report_only=True, extra={"first_mismatch": m}))
    big = max(order, 60)
    for name, fn in (("G", rogers_G), ("H", rogers_H)):
        m = first_mismatch(fn(big), fn(big, "product"))
        out.append(Residual(f"rr.rogers_{name}_sum_vs_product", {"order": big}, None, None,
                            0.0 if m is None else 1.0, 0.5, extra={"first_mismatch": m}))
    return out
