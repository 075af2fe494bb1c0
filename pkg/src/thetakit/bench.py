"""Convergence comparison of the theta representations on a (v, tau) grid."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import List, Optional, Sequence

import mpmath

from .config import DEFAULT, EvalConfig, as_kind, as_point
from .errors import ThetaKitError
from .report import relative_gap
from .theta import evaluate_theta, strip_ratio

REPRESENTATIONS = ("fourier", "product", "expansion")
BENCH_TAUS = ("0.8i", "1i", "1.5i", "2i", "0.3+1.2i", "0.5+2i", "1.2i", "0.2+0.9i")
BENCH_RATIOS = (0.1, 0.3, 0.5, 0.7, 0.9, 0.2, 0.4, 0.6, 0.8, 0.95)


@dataclass(frozen=True)
class BenchRow:
    v: complex
    tau: complex
    representation: str
    strip_ratio: float
    terms_to_tol: int
    wall_time: float
    error_vs_oracle: float


def oracle(kind, v: complex, tau, dps: int = 30) -> complex:
    """``mpmath.jtheta`` at ``dps`` digits (the argument is ``pi*v``)."""
    pt = as_point(tau)
    with mpmath.workdps(dps):
        q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(pt.tau))
        return complex(mpmath.jtheta(int(kind), mpmath.pi * mpmath.mpc(v), q))


def v_for_ratio(ratio: float, tau) -> complex:
    """Purely imaginary ``v`` with ``|sin(pi v) / sin(pi tau/2)| = ratio`` (theta_3/theta_4 style strip)."""
    pt = as_point(tau)
    s = abs(mpmath.sin(0.5 * mpmath.pi * mpmath.mpc(pt.tau)))
    return 1j * float(mpmath.asinh(ratio * s)) / math.pi


def bench_point(kind, v: complex, tau, reps: Sequence[str], cfg: EvalConfig = DEFAULT, repeat: int = 3) -> List[BenchRow]:
    pt = as_point(tau)
    ref = oracle(kind, v, pt)
    ratio = strip_ratio(kind, v, pt)
    rows = []
    for rep in reps:
        best = math.inf
        ev = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            try:
                ev = evaluate_theta(kind, v, pt, rep, cfg)
            except ThetaKitError:
                ev = None
                break
            best = min(best, time.perf_counter() - t0)
        if ev is None:
            rows.append(BenchRow(v, pt.tau, rep, ratio, -1, math.nan, math.nan))
        else:
            rows.append(BenchRow(v, pt.tau, rep, ratio, ev.terms, best, relative_gap(ev.value, ref)))
    return rows


def _bench_tau(args) -> List[BenchRow]:
    kind, tau, ratios, reps, cfg = args
    k = as_kind(kind)
    pt = as_point(tau)
    rows = []
    for r in ratios:
        v = v_for_ratio(r, pt)
        if k in (2, 3):
            v += 0.5  # cos-type argument
        if k in (1, 2):
            v -= 0.5 * pt.tau  # the argument is v + tau/2
        rows.extend(bench_point(k, v, pt, reps, cfg))
    return rows


def run_bench(n: int = 5, reps: Sequence[str] = ("fourier", "expansion"), kind=4, cfg: EvalConfig = DEFAULT,
              workers: int = 1, taus: Optional[Sequence] = None) -> List[BenchRow]:
    """``n`` strip ratios by ``n`` values of tau (or the given taus), each representation once."""
    for r in reps:
        if r not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {r!r}")
    if taus is None:
        if not 1 <= n <= min(len(BENCH_TAUS), len(BENCH_RATIOS)):
            raise ValueError(f"grid size must be between 1 and {min(len(BENCH_TAUS), len(BENCH_RATIOS))}")
        taus = BENCH_TAUS[:n]
    ratios = sorted(BENCH_RATIOS[:n])
    jobs = [(kind, t, ratios, tuple(reps), cfg) for t in taus]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_bench_tau, jobs))
    else:
        chunks = [_bench_tau(j) for j in jobs]
    rows = [r for c in chunks for r in c]
    return sorted(rows, key=lambda r: (r.tau.imag, r.tau.real, r.strip_ratio, r.representation))


def _fmt(x) -> str:
    if isinstance(x, complex):
        return repr(x).strip("()")
    if isinstance(x, float):
        return repr(x)
    return str(x)


def to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow([f.name for f in fields(BenchRow)])
    for r in rows:
        w.writerow([_fmt(x) for x in astuple(r)])
    return buf.getvalue()
