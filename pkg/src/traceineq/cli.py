"""Command line interface.

Exit codes: 0 = no violations, 1 = violations found, 2 = usage/config error.
The default seed comes from the TRACEINEQ_SEED environment variable (an
explicit --seed wins).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import funcat, harness, ineq, symla, uinorm


def _default_seed() -> int:
    return int(os.environ.get("TRACEINEQ_SEED", "42"))


def _csv_ints(text: str) -> list:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _csv_strs(text: str) -> list:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traceineq",
        description="Verify trace/norm inequalities for operator monotone and "
                    "operator convex matrix functions over random PSD matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run randomized property suites")
    v.add_argument("--dims", type=_csv_ints, default=[2, 3, 4],
                   help="comma-separated matrix dimensions (default 2,3,4)")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--checks", type=_csv_strs, default=["all"],
                   help=f"comma list from {', '.join(harness.CHECKS)} or 'all'")
    v.add_argument("--functions", type=_csv_strs, default=["all"],
                   help="selectors like power:0.5,log1p,square,atom:2.5 or "
                        "'all' / 'power:grid'")
    v.add_argument("--kind", default="wishart",
                   help="sample kind: wishart, ordered_pair, commuting_pair, "
                        "projection_pair, rank_deficient")
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.add_argument("--format", default="text", choices=("text", "json", "csv"))
    v.add_argument("--out", default=None, help="write the report here instead of stdout")

    s = sub.add_parser("search", help="randomized counterexample search on the norm gaps")
    s.add_argument("--dim", type=_csv_ints, default=[2, 3, 4, 5, 6, 7, 8],
                   help="dimension or comma list of dimensions")
    s.add_argument("--instances", type=int, default=1000,
                   help="random screening instances before descent")
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--step-scale", type=float, default=0.1)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--norm", default="kyfan:all",
                   help="kyfan:all | kyfan:<k> | schatten:<p> | trace")
    s.add_argument("--functions", type=_csv_strs, default=["power:grid"])
    s.add_argument("--tolerance", type=float, default=1e-9)
    s.add_argument("--format", default="text", choices=("text", "json", "csv"))
    s.add_argument("--out", default=None)

    e = sub.add_parser("eval", help="evaluate one inequality on matrices from files")
    e.add_argument("--ineq", required=True,
                   choices=("monotone", "convex", "klein", "ricard", "chain",
                            "powers_stormer", "ando", "ando_theta", "conjecture"))
    e.add_argument("--A", required=True, help="matrix text file (rows of numbers)")
    e.add_argument("--B", required=True)
    e.add_argument("--function", default=None, help="catalog selector, e.g. power:0.5")
    e.add_argument("--p", type=float, default=None)
    e.add_argument("--s", type=float, default=None)
    e.add_argument("--theta", type=float, default=None)
    e.add_argument("--q", type=float, default=None)
    e.add_argument("--norm", default="trace")
    e.add_argument("--tolerance", type=float, default=1e-9)
    e.add_argument("--format", default="text", choices=("text", "json"))

    q = sub.add_parser("quadcheck", help="integral representation vs closed form")
    q.add_argument("--function", required=True)
    q.add_argument("--points", type=int, default=50)
    q.add_argument("--tolerance", type=float, default=1e-6)
    return parser


def _cmd_verify(args) -> int:
    cfg = harness.SuiteConfig(
        dims=tuple(args.dims), trials=args.trials,
        checks=tuple(args.checks), functions=tuple(args.functions),
        tolerance=args.tolerance,
        seed=args.seed if args.seed is not None else _default_seed(),
        kind=args.kind,
    )
    report = harness.run_suite(cfg)
    out = harness.emit_report(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(out)
    return 0 if report.total_violations == 0 else 1


def _cmd_search(args) -> int:
    cfg = harness.SearchConfig(
        dims=tuple(args.dim), instances=args.instances, restarts=args.restarts,
        steps=args.steps, step_scale=args.step_scale,
        functions=tuple(args.functions), norm=args.norm,
        tolerance=args.tolerance,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    report = harness.search_counterexample(cfg)
    out = harness.emit_report(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(out)
    return 0 if report.verdict == "no_violation_found" else 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"--ineq {args.ineq} requires {', '.join('--' + n for n in missing)}")


def _cmd_eval(args) -> int:
    a = symla.load_matrix(args.A)
    b = symla.load_matrix(args.B)
    tol = args.tolerance
    reports = []
    if args.ineq == "monotone":
        _need(args, "function")
        reports = [ineq.monotone_gap(a, b, funcat.parse_function(args.function, funcat.MONOTONE), tol)]
    elif args.ineq == "convex":
        _need(args, "function")
        reports = [ineq.convex_gap(a, b, funcat.parse_function(args.function, funcat.CONVEX), tol)]
    elif args.ineq == "klein":
        _need(args, "function")
        reports = [ineq.klein_gap(a, b, funcat.parse_function(args.function, funcat.CONVEX), tol)]
    elif args.ineq == "ricard":
        _need(args, "p")
        reports = [ineq.ricard_gap(a, b, args.p, tol)]
    elif args.ineq == "chain":
        _need(args, "p")
        chain = ineq.interpolation_chain(a, b, args.p, tol)
        reports = [chain.left_middle] + ([chain.middle_right] if chain.middle_right else [])
    elif args.ineq == "powers_stormer":
        _need(args, "s")
        reports = [ineq.powers_stormer_gap(a, b, args.s, tol)]
    elif args.ineq == "ando":
        _need(args, "p")
        reports = [uinorm.ando_gap(a, b, args.p, uinorm.parse_norm(args.norm), tol)]
    elif args.ineq == "ando_theta":
        _need(args, "theta", "q")
        reports = [uinorm.ando_theta_gap(a, b, args.theta, args.q, tol)]
    elif args.ineq == "conjecture":
        _need(args, "function")
        f = funcat.parse_function(args.function)
        reports = [uinorm.conjecture_gap(a, b, f, uinorm.parse_norm(args.norm), tol)]
    bad = False
    for rep in reports:
        bad = bad or rep.verdict == ineq.VIOLATED
        if args.format == "json":
            import json

            sys.stdout.write(json.dumps(rep.__dict__, sort_keys=True) + "\n")
        else:
            sys.stdout.write(
                f"{rep.name}: lhs={rep.lhs:.12g} rhs={rep.rhs:.12g} "
                f"gap={rep.gap:.6e} rel={rep.relative_gap:.6e} -> {rep.verdict}\n"
            )
    return 1 if bad else 0


def _cmd_quadcheck(args) -> int:
    f = funcat.parse_function(args.function)
    ts = np.logspace(-3.0, 3.0, args.points)
    worst_t, worst = 0.0, 0.0
    for t in ts:
        closed = funcat.eval_scalar(f, float(t))
        rep = funcat.eval_via_representation(f, float(t))
        err = abs(rep - closed) / max(1.0, abs(closed))
        if err > worst:
            worst_t, worst = float(t), err
    ok = worst <= args.tolerance
    sys.stdout.write(
        f"{f.name}: max relative deviation {worst:.3e} at t={worst_t:.6g} "
        f"over {args.points} log-spaced points in [1e-3, 1e3] "
        f"({'OK' if ok else 'FAIL'} at {args.tolerance:g})\n"
    )
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "search":
            return _cmd_search(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "quadcheck":
            return _cmd_quadcheck(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
