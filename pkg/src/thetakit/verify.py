"""Identity-verification suites.

Each suite is split into independent jobs (one per tau, plus the exact
formal checks) so the CLI can fan them out over a process pool.  Every job
returns a list of :class:`~thetakit.report.Residual`.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import elliptic, modular, rr, theta
from .config import DEFAULT, DEFAULT_GRID, EvalConfig, ThetaKind, as_point, parse_tau
from .errors import ThetaKitError
from .qseries import QSeries, euler_factors, lambert_expand, lambert_invert, qs_product
from .report import Residual, relative_gap

SUITES = ("theta", "modular", "elliptic", "rr", "formal")

# real and imaginary offsets for the v grids; real parts avoid the theta zeros
_RE = (-0.37, -0.21, -0.05, 0.13, 0.29, 0.41)
_IM = (-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4)


def strip_points(kind, tau, limit: float = 0.9) -> List[complex]:
    """Grid points ``v`` whose expansion strip ratio is below ``limit``."""
    pt = as_point(tau)
    centre = -0.5 * pt.tau if ThetaKind(int(kind)) in (ThetaKind.THETA1, ThetaKind.THETA2) else 0
    pts = []
    for a in _RE:
        for b in _IM:
            v = a + centre + 1j * b * pt.tau.imag * 0.5
            if theta.strip_ratio(kind, v, pt) < limit:
                pts.append(v)
    return pts


def wide_points(tau) -> List[complex]:
    pt = as_point(tau)
    return [a + 1j * b * pt.tau.imag for a in _RE for b in _IM]


def _aggregate(identity: str, params: dict, pairs: Iterable[Tuple[complex, complex]], tol: float) -> Residual:
    worst, n, arg = 0.0, 0, None
    for lhs, rhs in pairs:
        r = relative_gap(lhs, rhs)
        n += 1
        if r >= worst:
            worst, arg = r, (lhs, rhs)
    lhs, rhs = arg if arg else (None, None)
    return Residual(identity, params, lhs, rhs, worst, tol, extra={"points": n})


# --- per-tau suites -------------------------------------------------------------------


def theta_suite(tau, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    pt = as_point(tau)
    par = {"tau": pt.tau}
    out: List[Residual] = []
    for k in (1, 2, 3, 4):
        pts = strip_points(k, pt)
        out.append(_aggregate("theta.expansion_vs_fourier", {"kind": k, "tau": pt.tau},
                              ((theta.theta_expansion(k, v, pt, cfg), theta.theta_fourier(k, v, pt, cfg)) for v in pts),
                              1e-9))
        out.append(_aggregate("theta.product_vs_fourier", {"kind": k, "tau": pt.tau},
                              ((theta.theta_product(k, v, pt, cfg), theta.theta_fourier(k, v, pt, cfg))
                               for v in wide_points(pt)), 1e-9))
    for p in range(1, 13):
        c = theta.c2p_closed(p, pt, cfg)
        pp = {"p": p, "tau": pt.tau}
        out.append(Residual.compare("c2p.binomial_vs_closed", pp, theta.c2p_binomial(p, pt, cfg), c, 1e-9))
        out.append(Residual.compare("c2p.sine_vs_closed", pp, theta.c2p_sine_form(p, pt, cfg), c, 1e-9))
    out.append(Residual.compare("c2.lambert_vs_closed", par, theta.c2_lambert(pt, cfg), theta.c2p_closed(1, pt, cfg), 1e-9))
    table = theta.c2p_recursive(pt, 8, cfg)
    for p in range(1, 9):
        out.append(Residual.compare("c2p.recursive_vs_closed", {"p": p, "tau": pt.tau}, table[p],
                                    theta.c2p_closed(p, pt, cfg), 1e-6 * p))
    seeds = theta.c_seeds(pt, cfg)
    c4 = theta.c2p_closed(2, pt, cfg)
    out.append(Residual.compare("c4.seed", par, seeds.c4, c4, 1e-9))
    out.append(Residual.compare("c4.seed.printed", par, theta.c4_printed_seed(pt, cfg), c4, report_only=True))
    for form, ro in (("corrected", False), ("printed", True)):
        worst = max(r / s if s else 0.0 for r, s in theta.system_a_residuals(pt, 4, cfg, form))
        name = "system_a" + ("" if form == "corrected" else ".printed")
        out.append(Residual(name, par, None, None, worst, None if ro else 1e-9, report_only=ro))
    for k in (1, 2, 3, 4):
        v = 0.13 + 0.1j * pt.tau.imag
        out.append(Residual.compare("theta.log_derivative_vs_fd", {"kind": k, "tau": pt.tau},
                                    theta.theta_log_derivative(k, v, pt, cfg),
                                    theta.theta_log_derivative_fd(k, v, pt, cfg=cfg), 1e-6))
    v = 0.13 + 0.1j * pt.tau.imag
    out.append(Residual.compare("theta.log_theta4_fourier", par, theta.log_theta4_fourier(v, pt, cfg),
                                cmath.log(theta.theta_fourier(4, v, pt, cfg) / theta.theta_fourier(4, 0, pt, cfg)), 1e-9))
    pz = theta.theta1_prime_zero(pt, cfg)
    out.append(Residual.compare("theta1_prime_zero.null_product", par, pz.fourier, pz.null_product, 1e-9))
    out.append(Residual.compare("theta1_prime_zero.expansion", par, pz.fourier, pz.expansion, 1e-9))
    out.append(Residual.compare("theta1_prime_zero.expansion.printed_sign", par, pz.fourier, pz.printed_expansion,
                                report_only=True))
    out.append(Residual.compare("eta.expansion_vs_product", par, theta.dedekind_eta(pt, cfg, "expansion"),
                                theta.dedekind_eta(pt, cfg), 1e-9))
    # ratios only where both power sums converge
    v = 0.1 - 0.25j * pt.tau.imag
    try:
        r12, r34 = theta.theta_ratio(v, pt, cfg)
    except ThetaKitError:
        pass
    else:
        f = lambda k: theta.theta_fourier(k, v, pt, cfg)
        out.append(Residual.compare("theta.ratio12", {"v": v, "tau": pt.tau}, r12, f(1) / f(2), 1e-9))
        out.append(Residual.compare("theta.ratio34", {"v": v, "tau": pt.tau}, r34, f(3) / f(4), 1e-9))
        out.append(Residual.compare("theta.ratio12.printed", {"v": v, "tau": pt.tau},
                                    theta.theta_ratio_printed(v, pt, cfg), f(1) / f(2), report_only=True))
    return out


def modular_suite(tau, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    pt = as_point(tau)
    out: List[Residual] = []
    for p in range(1, 5):
        r = modular.check_period2(p, pt, cfg)
        out.append(Residual("period2", {"p": p, "tau": pt.tau}, None, None,
                            r / abs(theta.c2p_closed(p, pt, cfg)), 1e-13))
    out += modular.check_shift1(4, pt, cfg)
    out += modular.check_shift1_twice(3, pt, cfg)
    for p in (1, 2, 3):
        out += modular.modular_group_forms(p, pt, cfg)
    for printed in (False, True):
        a, b = modular.landen_c2p(4, pt, cfg, printed=printed)
        out += a + b
    out += modular.landen_theta_identity(0.1 + 0.05j, pt, cfg)
    lhs, rhs = modular.eta_quotient_landen(pt, cfg)
    out.append(Residual.compare("eta_quotient_landen", {"tau": pt.tau}, lhs, rhs, 1e-8))
    out.append(Residual.compare("eta_quotient_landen.printed", {"tau": pt.tau}, lhs,
                                modular.eta_quotient_landen_printed(pt, cfg), report_only=True))
    for m in (1, 2, 3):
        out += modular.base_identity(m, pt, cfg)
    for n, k in ((2, 1), (2, 3), (3, 2)):
        out += modular.higher_order_identity(n, k, pt, cfg)
    return out


def elliptic_suite(tau, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    pt = as_point(tau)
    out = elliptic.elliptic_checks(pt, cfg)
    for conv in ("classical", "doubled"):
        K = elliptic.K_from_tau(pt, cfg, conv)
        pairs = []
        for f in (0.1, 0.2, 0.35, 0.5, 0.7):
            z = f * K
            pairs.append((elliptic.jacobi_zn(z, pt, cfg, "closed", conv), elliptic.jacobi_zn(z, pt, cfg, "fourier", conv)))
        out.append(_aggregate("zn.closed_vs_fourier", {"convention": conv, "tau": pt.tau}, pairs, 1e-9))
    return out


def rr_suite(tau, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    return rr.rr_route_checks(tau, cfg) + rr.rr_modular_checks(tau, cfg)


# --- exact formal suite ----------------------------------------------------------------


def _exact(identity: str, params: dict, a: QSeries, b: QSeries) -> Residual:
    m = rr.first_mismatch(a, b)
    return Residual(identity, params, None, None, 0.0 if m is None else 1.0, 0.5, extra={"first_mismatch": m})


def formal_suite(order: int = 64) -> List[Residual]:
    out: List[Residual] = []
    f1, f2, f3 = theta.c2_formal_forms(order)
    out.append(_exact("formal.c2_forms.closed_vs_lambert", {"order": order}, f1, f2))
    out.append(_exact("formal.c2_forms.closed_vs_divisor", {"order": order}, f1, f3))
    for p in range(1, 7):
        closed = theta.c2p_formal_closed(p, order)
        out.append(_exact("formal.c2p.closed_vs_binomial", {"p": p, "order": order}, closed,
                          theta.c2p_formal_binomial(p, order)))
        out.append(_exact("formal.c2p.closed_vs_divisor_form", {"p": p, "order": order}, closed,
                          modular.divisor_form_c2p(p, order)))
    out.append(_exact("formal.theta4_triple_product", {"order": order}, theta.theta4_triple_product_formal(order),
                      theta.theta4_null_formal(order)))
    euler = qs_product(euler_factors(1, 1, order), order)
    pent = {}
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e <= order:
                pent[e] = (-1) ** abs(j)
                hit = True
        if not hit:
            break
        k += 1
    out.append(_exact("formal.euler_pentagonal", {"order": order}, euler, QSeries.from_dict(pent, order)))
    a = list(range(1, order + 1))
    back = lambert_invert(lambert_expand(a, "minus", order), order)
    out.append(Residual("formal.lambert_roundtrip", {"order": order}, None, None, 0.0 if list(back) == a else 1.0, 0.5))
    c2 = theta.c2p_formal_closed(1, order)
    rule = QSeries.from_dict({m: modular.c2_divisor_rule(m) for m in range(1, order + 1)}, order)
    out.append(_exact("formal.c2_divisor_rule", {"order": order}, c2, rule))
    out += rr.rr_formal_checks(min(order, 40))
    return out


# --- job plumbing ---------------------------------------------------------------------

_PER_TAU: Dict[str, Callable] = {
    "theta": theta_suite,
    "modular": modular_suite,
    "elliptic": elliptic_suite,
    "rr": rr_suite,
}


def make_jobs(suites: Sequence[str], grid: Sequence, order: int = 64) -> List[Tuple]:
    jobs = []
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
        if s == "formal":
            jobs.append(("formal", order))
        else:
            jobs.extend((s, as_point(parse_tau(t) if isinstance(t, str) else t).tau) for t in grid)
    return jobs


def run_job(job: Tuple, cfg: EvalConfig = DEFAULT) -> List[Residual]:
    name, arg = job
    if name == "formal":
        return formal_suite(arg)
    try:
        return _PER_TAU[name](arg, cfg)
    except ThetaKitError as exc:
        return [Residual(f"{name}.suite_error", {"tau": arg}, None, None, math.inf, 0.0,
                         note=f"{type(exc).__name__}: {exc}")]


def run_suites(suites: Sequence[str], grid: Optional[Sequence] = None, order: int = 64, workers: int = 1,
               cfg: EvalConfig = DEFAULT) -> List[Residual]:
    """Run the jobs (in a process pool when ``workers > 1``); the result is sorted."""
    jobs = make_jobs(suites, DEFAULT_GRID if grid is None else grid, order)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(run_job, jobs, [cfg] * len(jobs)))
    else:
        chunks = [run_job(j, cfg) for j in jobs]
    return sorted((r for c in chunks for r in c), key=Residual.sort_key)
