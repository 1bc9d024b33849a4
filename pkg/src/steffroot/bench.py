"""Experiment harness: deep single-start runs and seeded Monte-Carlo sweeps."""

from __future__ import annotations

import csv
import io
import json
import math
import multiprocessing
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import solve
from .analysis import Outcome, acoc, classify_outcome
from .config import RunTrace, SolverConfig, profile
from .corpus import Problem, get_problem, problem_ids
from .gfun import StabilizerFn

CSV_FIELDS = ("problem", "method", "g", "nonconv_pct", "mean_iter", "t_per_iter_rel", "n", "seed")
SINGLE_FIELDS = ("problem", "method", "g", "status", "iterations", "root", "q", "x0")

CLI_G = {"identity": "identity", "tanh": "g1", "clamp": "g2", "clamp_literal_max": "g2max"}
DEFAULT_KINDS = ("tanh", "clamp", "identity")


def match_tol(cfg: SolverConfig) -> float:
    return 1e-20 if cfg.precision.is_extended else 1e-4


@dataclass
class BenchRow:
    problem: str
    method: str
    g: str
    non_convergent_pct: float
    mean_iterations: float
    time_per_iter_rel: float
    sample_count: int
    seed: int

    def as_record(self) -> dict:
        return {
            "problem": self.problem,
            "method": self.method,
            "g": self.g,
            "nonconv_pct": f"{self.non_convergent_pct:.1f}",
            "mean_iter": f"{self.mean_iterations:.1f}",
            "t_per_iter_rel": f"{self.time_per_iter_rel:.2f}",
            "n": self.sample_count,
            "seed": self.seed,
        }


@dataclass
class SingleRow:
    problem: str
    method: str
    g: str
    status: str
    iterations: int
    root: str
    q: float | None
    x0: str

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["q"] = "" if self.q is None else f"{self.q:.1f}"
        return rec


def standard_configs(profile_name: str, methods=("normal", "accelerated"), kinds=DEFAULT_KINDS, **overrides):
    return [profile(profile_name, m, StabilizerFn(k), **overrides) for m in methods for k in kinds]


def _start(problem: Problem, x0):
    if problem.kind == "scalar":
        return x0[0] if isinstance(x0, (list, tuple)) else x0
    return list(x0)


def run_single(problem: Problem, cfg: SolverConfig, x0=None) -> tuple[RunTrace, Outcome]:
    """One deep run from ``x0`` (the problem's default start when omitted)."""
    if x0 is None:
        x0 = problem.default_x0
    trace = solve(problem, _start(problem, x0), cfg)
    roots = list(problem.known_roots)
    outcome = classify_outcome(trace, roots, match_tol(cfg))
    outcome.q_estimate = acoc(trace)
    return trace, outcome


def sample_initial_conditions(n: int, seed: int, box) -> list:
    """``n`` uniform i.i.d. points in ``box`` from a seeded PCG64 generator."""
    if n < 1:
        raise ValueError("need at least one sample")
    lo = np.array([b[0] for b in box], dtype=float)
    hi = np.array([b[1] for b in box], dtype=float)
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(n, len(box)))
    return [tuple(float(v) for v in row) for row in pts]


# state for forked workers; set before the pool starts
_JOB = {}


def _run_chunk(bounds):
    lo, hi = bounds
    problem, cfgs, samples = _JOB["problem"], _JOB["cfgs"], _JOB["samples"]
    out = []
    for cfg in cfgs:
        res = []
        for x0 in samples[lo:hi]:
            tr = solve(problem, _start(problem, x0), cfg)
            fin = tr.final
            fin = tuple(float(v) for v in fin) if isinstance(fin, list) else (float(fin),)
            res.append((tr.converged, tr.iterations_used, tr.wall_time, fin))
        out.append(res)
    return out


def run_samples(problem: Problem, cfgs, samples, jobs: int = 1):
    """Run every config on every sample.

    Returns one list per config of ``(converged, iterations, wall_time,
    final_point)`` tuples in sample order, independent of ``jobs``.
    """
    n = len(samples)
    _JOB.update(problem=problem, cfgs=list(cfgs), samples=samples)
    try:
        if jobs <= 1 or n < 2:
            return _run_chunk((0, n))
        size = max(1, math.ceil(n / (4 * jobs)))
        chunks = [(i, min(i + size, n)) for i in range(0, n, size)]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            parts = pool.map(_run_chunk, chunks)
        return [[r for part in parts for r in part[c]] for c in range(len(cfgs))]
    finally:
        _JOB.clear()


def _baseline_index(cfgs, group):
    for i in group:
        if cfgs[i].g.kind == "identity":
            return i
    return group[0]


def summarize(problem_id: str, cfgs, results, seed: int) -> list:
    """Turn raw per-sample results into :class:`BenchRow` records.

    Timing is compared only on samples where every config sharing the same
    method converged, and normalized to the identity-g config of that method.
    """
    rows = [None] * len(cfgs)
    groups = {}
    for i, cfg in enumerate(cfgs):
        groups.setdefault(cfg.method, []).append(i)
    for method, group in groups.items():
        n = len(results[group[0]])
        common = [s for s in range(n)
                  if all(results[i][s][0] and results[i][s][1] > 0 for i in group)]
        t_iter = {}
        for i in group:
            vals = [results[i][s][2] / results[i][s][1] for s in common]
            t_iter[i] = sum(vals) / len(vals) if vals else math.nan
        base = _baseline_index(cfgs, group)
        for i in group:
            res = results[i]
            conv = [r for r in res if r[0]]
            rel = 1.0 if i == base else (t_iter[i] / t_iter[base] if t_iter[base] > 0 else math.nan)
            rows[i] = BenchRow(
                problem=problem_id,
                method=method,
                g=CLI_G[cfgs[i].g.kind],
                non_convergent_pct=100.0 * (len(res) - len(conv)) / len(res),
                mean_iterations=sum(r[1] for r in conv) / len(conv) if conv else math.nan,
                time_per_iter_rel=rel,
                sample_count=len(res),
                seed=seed,
            )
    return rows


def run_montecarlo(problem: Problem, cfgs, n: int = 10_000, seed: int = 0, box=None, jobs: int = 1) -> list:
    """Monte-Carlo sweep: every config sees the same pre-generated starts."""
    box = box if box is not None else problem.box
    if len(box) != problem.dim:
        raise ValueError(f"box has {len(box)} axes, problem {problem.id} has dimension {problem.dim}")
    samples = sample_initial_conditions(n, seed, box)
    results = run_samples(problem, cfgs, samples, jobs)
    return summarize(problem.id, cfgs, results, seed)


def _fmt_point(x) -> str:
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(f"{float(v):.6g}" for v in x) + ")"
    return f"{float(x):.6g}"


def run_table2_suite(problems=None, kinds=DEFAULT_KINDS) -> list:
    rows = []
    for pid in problems or problem_ids("scalar") + problem_ids("system"):
        p = get_problem(pid)
        for cfg in standard_configs("table2", kinds=kinds):
            trace, out = run_single(p, cfg)
            rows.append(SingleRow(pid, cfg.method, CLI_G[cfg.g.kind], trace.status.value,
                                  trace.iterations_used, _fmt_point(trace.final), out.q_estimate,
                                  _fmt_point(p.default_x0 if p.is_vector else p.default_x0[0])))
    return rows


def run_mc_suite(suite: str, problems=None, n=10_000, seed=0, jobs=1, kinds=DEFAULT_KINDS) -> list:
    if problems is None:
        problems = problem_ids("field") if suite == "table4" else problem_ids("scalar") + problem_ids("system")
    rows = []
    for pid in problems:
        p = get_problem(pid)
        rows.extend(run_montecarlo(p, standard_configs(suite, kinds=kinds), n, seed, jobs=jobs))
    return rows


def render_report(rows, format: str = "csv") -> str:
    if not rows:
        raise ValueError("no rows to report")
    records = [r.as_record() for r in rows]
    fields = CSV_FIELDS if isinstance(rows[0], BenchRow) else SINGLE_FIELDS
    if format == "json":
        return json.dumps([{k: rec[k] for k in fields} for rec in records], indent=2) + "\n"
    if format != "csv":
        raise ValueError(f"unknown report format {format!r}")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()


def write_report(rows, path, format: str = "csv") -> None:
    """Write rows as CSV or JSON with fixed field order and number formatting."""
    text = render_report(rows, format)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
