"""Modified Steffensen iteration for scalar equations ``f(x) = 0``.

The derivative is replaced by the divided difference

    h(x) = (f(x + s) - f(x)) / s,    s = g(f(x))

where ``g`` is a :class:`~steffroot.gfun.StabilizerFn`.  The accelerated
variant feeds ``g`` with ``gamma * f(x)`` where ``gamma = -1/h`` from the
previous step, so the probe point sits close to where the next iterate will
land.
"""

from __future__ import annotations

from time import perf_counter

from ._eval import Counted
from .config import RunTrace, SolverConfig, Status
from .errors import DegenerateDenominator, DivergedError
from .gfun import StabilizerFn, eval_g
from .numerics import DOUBLE


def derivative_estimate(f, x, g: StabilizerFn, s_arg, fx=None, prec=DOUBLE):
    """Divided-difference slope of ``f`` at ``x`` with step ``g(s_arg)``.

    Pass the known ``fx = f(x)`` to spend a single extra evaluation.
    """
    if fx is None:
        fx = f(x)
    s = eval_g(g, s_arg, prec)
    if s == 0:
        raise DegenerateDenominator("perturbation vanished")
    fxs = f(x + s)
    if not (prec.isfinite(fx) and prec.isfinite(fxs)):
        raise DivergedError("non-finite function value")
    return (fxs - fx) / s


def solve_scalar(f, x0, cfg: SolverConfig) -> RunTrace:
    prec = cfg.precision
    isfinite = prec.isfinite
    g, eps, bound = cfg.resolved()
    delta = g.floor_delta
    accelerated = cfg.accelerated
    ev = Counted(f)

    start = perf_counter()
    x = prec.c(x0)
    fx = ev(x)
    iterates = [x]
    residuals = [abs(fx)]
    slope_prev = None
    n = 0
    while True:
        if abs(fx) < eps:
            status = Status.CONVERGED
            break
        if not (isfinite(fx) and isfinite(x)) or abs(x) > bound:
            status = Status.DIVERGED
            break
        if n >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break

        if accelerated and slope_prev is not None and abs(slope_prev) >= delta:
            s_arg = -fx / slope_prev
        else:
            s_arg = fx
        s = eval_g(g, s_arg, prec)
        if s == 0:
            status = Status.DEGENERATE_DENOMINATOR
            break
        fxs = ev(x + s)
        if not isfinite(fxs):
            status = Status.DIVERGED
            break
        diff = fxs - fx
        if diff == 0:
            status = Status.DEGENERATE_DENOMINATOR
            break
        # x - fx/h with h = diff/s, arranged so that s = fx gives fx**2/diff
        x = x - fx * s / diff
        slope_prev = diff / s
        n += 1
        fx = ev(x)
        iterates.append(x)
        residuals.append(abs(fx))

    return RunTrace(
        iterates=iterates,
        residual_norms=residuals,
        status=status,
        iterations_used=n,
        wall_time=perf_counter() - start,
        gamma_history_kept=accelerated,
        evaluations=ev.calls,
        eps=eps,
    )
