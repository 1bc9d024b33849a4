"""Jacobian-free Newton-type iteration for square systems ``F(x) = 0``.

Entry ``(i, j)`` of the Jacobian estimate is the forward divided difference of
component ``i`` along axis ``j``, with a step shared by the whole row:
``s_i = g(F_i(x))``.  One iteration costs ``k**2`` component evaluations for
the matrix plus ``k`` for the new residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from time import perf_counter

from ._eval import MATH_ERRORS
from .config import RunTrace, SolverConfig, Status
from .errors import DegenerateDenominator, DivergedError, SingularJacobian
from .gfun import StabilizerFn, eval_g
from .numerics import DOUBLE, SingularMatrix, lu_solve, norm2


class VectorFunction:
    """A map R^k -> R^k given as ``k`` separately callable components.

    Each component takes the full point (a sequence of length ``k``) and
    returns one scalar, so the cost of a Jacobian estimate can be counted in
    component evaluations.
    """

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("need at least one component")

    @classmethod
    def from_callable(cls, fn, k):
        """Split a callable returning a length-``k`` sequence into components."""
        return cls(_Pick(fn, i) for i in range(k))

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, x):
        return [fi(x) for fi in self.components]


class _Pick:
    def __init__(self, fn, i):
        self.fn, self.i = fn, i

    def __call__(self, x):
        return self.fn(x)[self.i]


@dataclass
class JacobianEstimate:
    matrix: list
    evaluations_used: int
    perturbations: list


@dataclass
class GammaState:
    previous_estimate: object = None
    initialized: bool = False

    def update(self, estimate):
        self.previous_estimate = estimate
        self.initialized = True


def _components(f):
    return f.components if isinstance(f, VectorFunction) else tuple(f)


def t_operator(f, xbar, i: int, j: int, s_i, fxi=None):
    """Divided difference of component ``i`` along axis ``j`` (0-based) with step ``s_i``."""
    fi = _components(f)[i]
    if fxi is None:
        fxi = fi(xbar)
    shifted = list(xbar)
    shifted[j] = shifted[j] + s_i
    return (fi(shifted) - fxi) / s_i


def _row_steps(fx, g, gamma, prec):
    steps = [eval_g(g, v, prec) for v in fx]
    if gamma is not None and gamma.initialized:
        try:
            w = lu_solve(gamma.previous_estimate, fx, prec.pivot_tol)
        except SingularMatrix:
            return steps
        delta = g.floor_delta
        for i, wi in enumerate(w):
            wi = -wi
            if prec.isfinite(wi) and wi != 0 and abs(wi) >= delta:
                steps[i] = eval_g(g, wi, prec)
    return steps


def estimate_jacobian(f, xbar, g: StabilizerFn, gamma: GammaState | None = None, fx=None,
                      prec=DOUBLE) -> JacobianEstimate:
    """Assemble the divided-difference Jacobian of ``f`` at ``xbar``.

    With an initialized ``gamma`` the row steps come from the accelerated
    argument ``-Gamma_prev^{-1} F(x)``; rows where that argument is unusable
    keep the normal step ``g(F_i(x))``.
    """
    comps = _components(f)
    k = len(comps)
    used = 0
    if fx is None:
        fx = [fi(xbar) for fi in comps]
        used += k
    isfinite = prec.isfinite
    if not all(map(isfinite, fx)):
        raise DivergedError("non-finite residual")
    steps = _row_steps(fx, g, gamma, prec)
    matrix = []
    axes = range(k)
    base = list(xbar)
    for i, fi in enumerate(comps):
        s = steps[i]
        if s == 0:
            raise DegenerateDenominator(f"row {i} perturbation vanished")
        fxi = fx[i]
        row = []
        for j in axes:
            shifted = base.copy()
            shifted[j] += s
            row.append((fi(shifted) - fxi) / s)
        if not all(map(isfinite, row)):
            raise DivergedError("non-finite evaluation")
        matrix.append(row)
    used += k * k
    return JacobianEstimate(matrix, used, steps)


def solve_system(f, x0, cfg: SolverConfig) -> RunTrace:
    prec = cfg.precision
    isfinite = prec.isfinite
    g, eps, bound = cfg.resolved()
    comps = _components(f)
    k = len(comps)
    x = [prec.c(v) for v in x0]
    if len(x) != k:
        raise ValueError(f"x0 has length {len(x)}, system has {k} components")
    gamma = GammaState() if cfg.accelerated else None

    start = perf_counter()
    try:
        fx = [fi(x) for fi in comps]
        r = norm2(fx)
    except MATH_ERRORS:
        fx, r = None, math.nan
    evaluations = k
    iterates = [x]
    residuals = [r]
    n = 0
    while True:
        if r < eps:
            status = Status.CONVERGED
            break
        if not (isfinite(r) and all(map(isfinite, x))) or max(map(abs, x)) > bound:
            status = Status.DIVERGED
            break
        if n >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        try:
            est = estimate_jacobian(comps, x, g, gamma, fx=fx, prec=prec)
            evaluations += k * k
            try:
                step = lu_solve(est.matrix, fx, prec.pivot_tol)
            except SingularMatrix as exc:
                raise SingularJacobian(str(exc)) from None
            x = [a - b for a, b in zip(x, step)]
            fx = [fi(x) for fi in comps]
            evaluations += k
            r = norm2(fx)
        except (DivergedError, DegenerateDenominator, SingularJacobian) as exc:
            status = exc.status
            break
        except MATH_ERRORS:
            status = Status.DIVERGED
            break
        if gamma is not None:
            gamma.update(est.matrix)
        n += 1
        iterates.append(x)
        residuals.append(r)

    return RunTrace(
        iterates=iterates,
        residual_norms=residuals,
        status=status,
        iterations_used=n,
        wall_time=perf_counter() - start,
        gamma_history_kept=gamma is not None,
        evaluations=evaluations,
        eps=eps,
    )
