"""Command-line interface: ``steffroot {solve,bench,basins,acoc}``."""

from __future__ import annotations

import argparse
import sys

from . import solve
from .analysis import acoc
from .basins import compute_basins, render_ppm
from .bench import (SingleRow, match_tol, run_mc_suite, run_single, run_table2_suite, write_report)
from .config import profile
from .corpus import get_problem, planar
from .gfun import CLI_NAMES, from_cli_name

METHOD_NAMES = {"normal": "normal", "accel": "accelerated", "accelerated": "accelerated"}
# options whose values may start with '-' (e.g. --xrange -2:2)
_VALUE_OPTS = {"--x0", "--xrange", "--yrange"}


class UsageError(Exception):
    pass


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _interval(text):
    try:
        a, b = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if not a < b:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    return (a, b)


def _grid(text):
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return (w, h)


def _add_solver_args(p, need_x0=False, default_profile="table3"):
    p.add_argument("--problem", required=True)
    p.add_argument("--method", choices=sorted(METHOD_NAMES), default="normal")
    p.add_argument("--g", choices=sorted(CLI_NAMES), default="g1")
    if need_x0:
        p.add_argument("--x0", type=_floats, default=None, help="comma-separated start (default: problem default)")
    p.add_argument("--profile", choices=("table2", "table3", "table4"), default=default_profile)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--delta", type=float, default=None, help="override the g floor (default eps/2)")


def build_parser():
    parser = argparse.ArgumentParser(prog="steffroot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one solve and print the result")
    _add_solver_args(p, need_x0=True)
    p.add_argument("--trace", action="store_true", help="print every iterate")

    p = sub.add_parser("bench", help="run a benchmark suite and write a report")
    p.add_argument("--suite", choices=("table2", "table3", "table4"), required=True)
    p.add_argument("--problems", default=None, help="comma-separated problem ids")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("basins", help="render basins of attraction to a PPM file")
    _add_solver_args(p)
    p.add_argument("--grid", type=_grid, default=(1000, 1000))
    p.add_argument("--xrange", type=_interval, default=(-2.0, 2.0))
    p.add_argument("--yrange", type=_interval, default=(-2.0, 2.0))
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--shade", action="store_true", help="darken pixels by iteration count")

    p = sub.add_parser("acoc", help="print the ACOC estimate of one run")
    _add_solver_args(p, need_x0=True)
    return parser


def _fix_negative_values(argv):
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _config(args):
    g = from_cli_name(args.g, args.delta)
    return profile(args.profile, METHOD_NAMES[args.method], g, eps=args.eps, max_iter=args.max_iter)


def _problem(pid):
    try:
        return get_problem(pid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _x0(problem, x0):
    if x0 is None:
        return list(problem.default_x0)
    if len(x0) != problem.dim:
        raise UsageError(f"--x0 needs {problem.dim} values for {problem.id}")
    return x0


def _print_config(out, **items):
    out.write("config: " + " ".join(f"{k}={v}" for k, v in items.items()) + "\n")


def _fmt(x):
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return f"{float(x):.17g}"


def cmd_solve(args, out):
    problem = _problem(args.problem)
    cfg = _config(args)
    x0 = _x0(problem, args.x0)
    _print_config(out, problem=problem.id, profile=args.profile, **cfg.describe(), x0=_fmt(x0))
    trace, outcome = run_single(problem, cfg, x0)
    if args.trace:
        for i, (x, r) in enumerate(zip(trace.iterates, trace.residual_norms)):
            out.write(f"{i:5d} {_fmt(x)} |f|={float(r):.3e}\n")
    label = "root" if trace.converged else "final-iterate"
    q = outcome.q_estimate
    out.write(f"status: {trace.status}\n{label}: {_fmt(trace.final)}\n"
              f"iterations: {trace.iterations_used}\nq: {'insufficient-iterations' if q is None else f'{q:.3f}'}\n")
    if outcome.converged and outcome.matched_root is not None:
        out.write(f"matched-known-root: {outcome.matched_root} (distance {outcome.distance:.3g})\n")
    return 0 if trace.converged else 1


def cmd_bench(args, out):
    problems = [p.strip() for p in args.problems.split(",")] if args.problems else None
    for pid in problems or ():
        _problem(pid)
    base = profile(args.suite)
    _print_config(out, suite=args.suite, eps=base.eps, delta=base.eps / 2, max_iter=base.max_iter,
                  precision=base.describe()["precision"], samples=args.samples, seed=args.seed,
                  jobs=args.jobs)
    if args.suite == "table2":
        rows = run_table2_suite(problems)
    else:
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        rows = run_mc_suite(args.suite, problems, args.samples, args.seed, args.jobs)
    write_report(rows, args.out, args.format)
    out.write(f"wrote {len(rows)} rows to {args.out}\n")
    return 0


def cmd_basins(args, out):
    problem = _problem(args.problem)
    if problem.kind == "scalar":
        try:
            problem = planar(problem.id)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if problem.kind != "system" or problem.dim != 2:
        raise UsageError(f"{problem.id} is not a planar system")
    cfg = _config(args)
    w, h = args.grid
    _print_config(out, problem=problem.id, profile=args.profile, **cfg.describe(), grid=f"{w}x{h}",
                  xrange=args.xrange, yrange=args.yrange, jobs=args.jobs)
    img = compute_basins(problem, cfg, w, h, args.xrange, args.yrange, jobs=args.jobs)
    render_ppm(img, path=args.out, shade=args.shade)
    out.write(f"wrote {args.out}\nnon-convergent fraction: {img.nonconvergent_fraction:.4f}\n")
    out.write(f"roots: {len(img.root_table)}\n")
    for i, r in enumerate(img.root_table, 1):
        out.write(f"  {i}: {_fmt(r)}\n")
    return 0


def cmd_acoc(args, out):
    problem = _problem(args.problem)
    cfg = _config(args)
    x0 = _x0(problem, args.x0)
    _print_config(out, problem=problem.id, profile=args.profile, **cfg.describe(), x0=_fmt(x0))
    trace = solve(problem, x0[0] if problem.kind == "scalar" else x0, cfg)
    q = acoc(trace)
    out.write("insufficient-iterations\n" if q is None else f"{q:.6f}\n")
    return 0


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "basins": cmd_basins, "acoc": cmd_acoc}


def dispatch(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"steffroot: error: {exc}\n")
        return 2


def main():
    sys.exit(dispatch())
