"""Compiled vs pure-Python kernels: wall time per call and agreement.

    python benchmarks/bench_kernels.py [--number N] [--csv]
"""

import argparse
import cmath
import csv
import sys
import timeit

from thetakit import _purekernels as pure

try:
    from thetakit import _kernels as compiled
except ImportError:
    compiled = None

TOL, MAX = 1e-14, 4000
TAU = 1.2j
Q = cmath.exp(1j * cmath.pi * TAU)

CASES = [
    ("fourier theta4", "fourier", (4, 0.1 + 0.2j, TAU, 0, TOL, MAX)),
    ("fourier theta1 d3", "fourier", (1, 0.1 + 0.2j, TAU, 3, TOL, MAX)),
    ("product theta3", "product", (3, 0.1 + 0.2j, TAU, TOL, MAX)),
    ("wpow_sum p=6", "wpow_sum", (Q, 6, TOL, MAX)),
    ("exponent_sum near edge", "exponent_sum", (Q, 0.8 * cmath.sin(0.5 * cmath.pi * TAU) ** 2, TOL, MAX)),
    ("binomial_sum p=4", "binomial_sum", (Q, 4, TOL, MAX)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--number", type=int, default=2000, help="calls per timing")
    ap.add_argument("--csv", action="store_true", help="CSV instead of a table")
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; only the pure kernels are available", file=sys.stderr)
        return 1
    rows = []
    for label, name, call_args in CASES:
        fp, fc = getattr(pure, name), getattr(compiled, name)
        vp, vc = fp(*call_args)[0], fc(*call_args)[0]
        tp = min(timeit.repeat(lambda: fp(*call_args), number=args.number, repeat=3)) / args.number
        tc = min(timeit.repeat(lambda: fc(*call_args), number=args.number, repeat=3)) / args.number
        rows.append((label, tp * 1e6, tc * 1e6, tp / tc, abs(vp - vc) / max(abs(vp), 1e-300)))
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(["kernel", "pure_us", "cython_us", "speedup", "rel_diff"])
        w.writerows(rows)
    else:
        print(f"{'kernel':26s} {'pure us':>10s} {'cython us':>10s} {'speedup':>8s} {'rel diff':>9s}")
        for r in rows:
            print(f"{r[0]:26s} {r[1]:10.2f} {r[2]:10.2f} {r[3]:8.1f} {r[4]:9.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
