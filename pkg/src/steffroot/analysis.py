"""Convergence-order estimation and classification of finished runs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .config import RunTrace, Status
from .numerics import norm2

MIN_ITERATES = 6


def _dist(a, b):
    if isinstance(a, (list, tuple)):
        return norm2([p - q for p, q in zip(a, b)])
    return abs(a - b)


def _log(x):
    if isinstance(x, float):
        return math.log(x)
    return mpmath.log(x)


def acoc_sequence(iterates, eps=None) -> list:
    """All well-defined ACOC values for ``iterates``, in order.

    The series stops at the first step shorter than ``eps`` (or at the first
    zero step); values whose log ratios are undefined are skipped.
    """
    d = []
    for a, b in zip(iterates, iterates[1:]):
        step = _dist(b, a)
        d.append(step)
        if step == 0 or (eps is not None and step < eps):
            break
    qs = []
    for n in range(2, len(d)):
        d0, d1, d2 = d[n - 2], d[n - 1], d[n]
        if not (d0 > 0 and d1 > 0 and d2 > 0):
            continue
        den = _log(d1 / d0)
        if den == 0:
            continue
        q = _log(d2 / d1) / den
        if math.isfinite(float(q)):
            qs.append(float(q))
    return qs


def acoc(trace, eps=None):
    """Last ACOC estimate for a trace, or ``None`` with fewer than six iterates.

    ``trace`` is a :class:`RunTrace` or a plain list of iterates; vector
    iterates use Euclidean step lengths.  ``eps`` defaults to the trace's
    stopping tolerance.
    """
    if isinstance(trace, RunTrace):
        iterates = trace.iterates
        if eps is None:
            eps = trace.eps
    else:
        iterates = list(trace)
    if len(iterates) < MIN_ITERATES:
        return None
    qs = acoc_sequence(iterates, eps)
    return qs[-1] if qs else None


@dataclass
class Outcome:
    status: Status
    final: object
    matched_root: int | None = None
    root: object = None
    distance: float | None = None
    new_root: bool = False
    q_estimate: float | None = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def _nearest(point, roots):
    best, best_d = None, None
    for idx, r in enumerate(roots):
        dist = float(_dist(point, r))
        if best_d is None or dist < best_d:
            best, best_d = idx, dist
    return best, best_d


def classify_outcome(trace: RunTrace, known_roots, tol, with_acoc=False) -> Outcome:
    """Match a converged trace to the nearest known root within ``tol``.

    Converged traces that land elsewhere are flagged ``new_root``; every
    other status is non-convergent.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    q = acoc(trace) if with_acoc else None
    final = trace.final
    if trace.status is not Status.CONVERGED:
        return Outcome(trace.status, final, q_estimate=q)
    point = list(final) if isinstance(final, (list, tuple)) else final
    idx, dist = _nearest(point, [r if not isinstance(r, tuple) else list(r) for r in known_roots])
    if idx is not None and dist <= tol:
        return Outcome(trace.status, final, idx, known_roots[idx], dist, q_estimate=q)
    return Outcome(trace.status, final, None, final, dist, new_root=True, q_estimate=q)
