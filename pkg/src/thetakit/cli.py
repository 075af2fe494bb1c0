"""``thetakit`` command line: eval, coeffs, verify, bench.

Exit codes: 0 success, 2 usage, 3 domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import List, Optional

from . import bench, elliptic, rr, theta, verify
from .config import RunConfig, parse_complex, parse_tau
from .errors import ThetaKitError
from .report import json_number

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAIL = 0, 2, 3, 4

FUNCTIONS = ("theta1", "theta2", "theta3", "theta4", "wp", "zn", "eta", "rr")
WP_REPS = ("expansion", "oracle", "lattice", "addition")


class UsageError(Exception):
    pass


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ThetaKitError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tau_arg(text: str):
    try:
        return parse_tau(text)
    except ThetaKitError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fmt_complex(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(record), file=out)
    else:
        print("  ".join(f"{k}={_fmt_complex(v) if isinstance(v, complex) else v}" for k, v in record.items()), file=out)


# --- eval -----------------------------------------------------------------------------


def cmd_eval(args, run: RunConfig, out) -> int:
    cfg = run.eval_config(args.policy)
    tau = args.tau
    point = args.v if args.v is not None else args.z
    fn = args.function
    rec = {"function": fn, "tau": tau.tau}
    if fn.startswith("theta"):
        if point is None:
            raise UsageError("--v is required for theta functions")
        rep = args.rep or "fourier"
        if rep not in ("fourier", "product", "expansion"):
            raise UsageError(f"representation {rep!r} is not available for {fn}")
        ev = theta.evaluate_theta(int(fn[-1]), point, tau, rep, cfg)
        rec.update(v=point, value=ev.value, representation=ev.representation, terms=ev.terms,
                   strip_ratio=ev.strip_ratio, inside_strip=ev.inside_strip)
    elif fn == "wp":
        if point is None:
            raise UsageError("--z is required for wp")
        rep = args.rep or "oracle"
        if rep not in WP_REPS:
            raise UsageError(f"representation {rep!r} is not available for wp")
        if rep == "expansion":
            val = elliptic.wp_expansion(point, tau, cfg)
            note = "value of p(z + tau)"
        elif rep == "oracle":
            val, note = elliptic.wp_oracle(point, tau, cfg), ""
        elif rep == "lattice":
            val, note = elliptic.wp_lattice(point, tau), "loose oracle"
        else:
            val, note = elliptic.wp_addition_form(point, tau, cfg), ""
        ratio = elliptic._strip_ratio(complex(point), tau)
        rec.update(z=point, value=val, representation=rep, strip_ratio=ratio, inside_strip=ratio < 1)
        if note:
            rec["note"] = note
    elif fn == "zn":
        if point is None:
            raise UsageError("--z is required for zn")
        route = args.route or "closed"
        if route not in ("closed", "fourier"):
            raise UsageError(f"route {route!r} is not available for zn")
        rec.update(z=point, value=elliptic.jacobi_zn(point, tau, cfg, route, args.k_convention),
                   representation=route, k_convention=args.k_convention)
    elif fn == "eta":
        route = args.route or "product"
        if route not in ("product", "expansion"):
            raise UsageError(f"route {route!r} is not available for eta")
        rec.update(value=theta.dedekind_eta(tau, cfg, route), representation=route)
    else:
        route = args.route or "product"
        if route not in rr.NUMERIC_ROUTES:
            raise UsageError(f"route {route!r} is not available for rr; choose from {', '.join(rr.NUMERIC_ROUTES)}")
        val = rr.rr_value(tau, route, cfg)
        rec.update(value=val.value, representation=route, prefactor_exponent=str(val.prefactor_exponent),
                   body=val.body)
    if args.format == "json":
        rec = {k: json_number(v) if isinstance(v, complex) else v for k, v in rec.items()}
    _emit(rec, args.format, out)
    return EXIT_OK


# --- coeffs ---------------------------------------------------------------------------


def _formal_family(family: str, p: int, order: int):
    if family == "c":
        return theta.c2p_formal_closed(p, order)
    # bracket of a_2p without the pi^2/4 scale: (2p+2)(2p+1) c_(2p+2) - 4p^2 c_2p
    return (2 * p + 2) * (2 * p + 1) * theta.c2p_formal_closed(p + 1, order) - 4 * p * p * theta.c2p_formal_closed(p, order)


def cmd_coeffs(args, run: RunConfig, out) -> int:
    ps = [args.p] if args.p is not None else list(range(1, args.max_p + 1))
    if any(p < 1 for p in ps):
        raise UsageError("p must be >= 1")
    if args.formal:
        order = args.order if args.order is not None else run.order
        for p in ps:
            s = _formal_family(args.family, p, order)
            if args.format == "json":
                rec = {"family": args.family, "p": p, "order": order, "coeffs": s.to_json_list()}
                if args.family == "a":
                    rec["scale"] = "pi^2/4"
                print(json.dumps(rec), file=out)
            else:
                items = ", ".join(str(c) for c in s.coeffs)
                scale = "(pi^2/4) * " if args.family == "a" else ""
                print(f"{args.family}_{2 * p} = {scale}[{items}]", file=out)
        return EXIT_OK
    if args.tau is None:
        raise UsageError("give --tau or --formal")
    cfg = run.eval_config()
    for p in ps:
        if args.family == "c":
            val = theta.c2p_closed(p, args.tau, cfg)
        else:
            val = elliptic.a2p_closed(p, args.tau, cfg)
        if args.format == "json":
            print(json.dumps({"family": args.family, "p": p, "tau": json_number(args.tau.tau), "value": json_number(val)}), file=out)
        else:
            print(f"{args.family}_{2 * p}  {_fmt_complex(val)}", file=out)
    return EXIT_OK


# --- verify ---------------------------------------------------------------------------


def cmd_verify(args, run: RunConfig, out) -> int:
    suites = list(args.suite)
    if not suites:
        raise UsageError("select at least one suite: " + ", ".join(("all",) + verify.SUITES))
    if "all" in suites:
        suites = list(verify.SUITES)
    unknown = [s for s in suites if s not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    grid = run.grid if args.grid is None else tuple(s for s in args.grid.split(",") if s.strip())
    try:
        for g in grid:
            parse_tau(g)
    except ThetaKitError as exc:
        raise UsageError(f"bad tau grid: {exc}") from None
    order = args.order if args.order is not None else run.order
    workers = args.workers if args.workers is not None else run.workers
    results = verify.run_suites(suites, grid, order, workers, run.eval_config())
    failed = 0
    for r in results:
        if r.status == "fail":
            failed += 1
        if args.format == "json":
            print(json.dumps(r.to_json()), file=out)
        else:
            print(f"{r.status:8s} {r.identity} {json.dumps(r.to_json()['params'])} residual={r.residual:.3g}", file=out)
    summary = {"checks": len(results), "failed": failed,
               "reported": sum(r.status == "reported" for r in results)}
    print(json.dumps({"summary": summary}) if args.format == "json" else
          f"# {summary['checks']} checks, {failed} failed, {summary['reported']} report-only", file=out)
    return EXIT_FAIL if failed else EXIT_OK


# --- bench ----------------------------------------------------------------------------


def cmd_bench(args, run: RunConfig, out) -> int:
    reps = [r.strip() for r in args.reps.split(",") if r.strip()]
    bad = [r for r in reps if r not in bench.REPRESENTATIONS]
    if not reps or bad:
        raise UsageError(f"representations must be drawn from {', '.join(bench.REPRESENTATIONS)}")
    limit = min(len(bench.BENCH_TAUS), len(bench.BENCH_RATIOS))
    if not 1 <= args.grid <= limit:
        raise UsageError(f"--grid must be between 1 and {limit}")
    workers = args.workers if args.workers is not None else run.workers
    rows = bench.run_bench(args.grid, reps, args.kind, run.eval_config(), workers)
    text = bench.to_csv(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thetakit", description="Theta functions, c_2p coefficients and identity checks.")
    ap.add_argument("--tol", type=float, help="series tolerance (default 1e-14, env THETAKIT_TOL)")
    ap.add_argument("--max-terms", type=int, help="term cap per series (env THETAKIT_MAX_TERMS)")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a function at one point")
    e.add_argument("function", choices=FUNCTIONS)
    e.add_argument("--tau", type=_tau_arg, required=True, help="tau as a+bi, b > 0 (e.g. 2i, 0.3+1.2i)")
    e.add_argument("--v", type=_complex_arg, help="theta argument")
    e.add_argument("--z", type=_complex_arg, help="argument of wp and zn")
    e.add_argument("--rep", help="theta: fourier|product|expansion; wp: " + "|".join(WP_REPS))
    e.add_argument("--route", help="eta: product|expansion; zn: closed|fourier; rr: " + "|".join(rr.NUMERIC_ROUTES))
    e.add_argument("--k-convention", choices=("classical", "doubled"), default="classical")
    e.add_argument("--policy", choices=("enforce", "warn", "ignore"), default="enforce", help="strip policy")
    e.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("coeffs", help="coefficient tables c_2p or a_2p")
    c.add_argument("family", choices=("c", "a"))
    c.add_argument("--tau", type=_tau_arg)
    c.add_argument("--max-p", type=int, default=6)
    c.add_argument("--p", type=int, help="single p instead of 1..max-p")
    c.add_argument("--formal", action="store_true", help="exact q-series coefficients")
    c.add_argument("--order", type=int, help="truncation order in formal mode (env THETAKIT_ORDER)")
    c.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="run identity suites; JSON lines by default")
    v.add_argument("suite", nargs="*", help="all, " + ", ".join(verify.SUITES))
    v.add_argument("--grid", help="comma separated tau values (env THETAKIT_GRID)")
    v.add_argument("--order", type=int, help="order of the exact formal checks (env THETAKIT_ORDER, default 40)")
    v.add_argument("--workers", type=int, help="process pool size (env THETAKIT_WORKERS)")
    v.add_argument("--format", choices=("json", "text"), default="json")

    b = sub.add_parser("bench", help="convergence comparison as CSV")
    b.add_argument("--grid", type=int, default=5, help="N strip ratios x N values of tau")
    b.add_argument("--reps", default="fourier,expansion", help="comma separated representations")
    b.add_argument("--kind", type=int, choices=(1, 2, 3, 4), default=4)
    b.add_argument("--workers", type=int)
    b.add_argument("--out", help="write CSV here instead of stdout")
    return ap


COMMANDS = {"eval": cmd_eval, "coeffs": cmd_coeffs, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        run = RunConfig.from_env()
        if args.tol is not None or args.max_terms is not None:
            run = replace(run, **{k: v for k, v in (("tol", args.tol), ("max_terms", args.max_terms)) if v is not None})
        return COMMANDS[args.command](args, run, out)
    except UsageError as exc:
        print(f"thetakit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ThetaKitError as exc:
        print(f"thetakit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"thetakit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
