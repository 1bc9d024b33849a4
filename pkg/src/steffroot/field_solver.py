"""Zeros of scalar fields f: R^k -> R with a Polyak step along an estimated gradient."""

from __future__ import annotations

from time import perf_counter

from ._eval import Counted
from .config import RunTrace, SolverConfig, Status
from .errors import DegenerateDenominator, DegenerateGradient, DivergedError
from .gfun import StabilizerFn, eval_g
from .numerics import DOUBLE

GRADIENT_TOL = 1e-32


def estimate_gradient(f, xbar, g: StabilizerFn, fx=None, s_arg=None, prec=DOUBLE):
    """Forward divided differences of ``f`` along every axis, one shared step.

    The step is ``g(s_arg)``, with ``s_arg`` defaulting to ``f(xbar)``.
    Costs ``k + 1`` evaluations, or ``k`` when ``fx`` is supplied.
    """
    if fx is None:
        fx = f(xbar)
    if not prec.isfinite(fx):
        raise DivergedError("non-finite field value")
    s = eval_g(g, fx if s_arg is None else s_arg, prec)
    if s == 0:
        raise DegenerateDenominator("perturbation vanished")
    grad = []
    for j in range(len(xbar)):
        shifted = list(xbar)
        shifted[j] = shifted[j] + s
        v = f(shifted)
        if not prec.isfinite(v):
            raise DivergedError("non-finite field value")
        grad.append((v - fx) / s)
    return grad


def polyak_step(f_val, grad, threshold=None):
    """Return ``-(f_val / |grad|^2) * grad``.

    Raises :class:`DegenerateGradient` when ``|grad|^2`` is below ``threshold``
    (default ``1e-32 * max(1, |f_val|)``).
    """
    sq = sum(c * c for c in grad)
    if threshold is None:
        threshold = GRADIENT_TOL * max(1, abs(f_val))
    if not sq >= threshold:
        raise DegenerateGradient(f"|grad|^2 = {sq}")
    scale = f_val / sq
    return [-scale * c for c in grad]


def solve_field(f, x0, cfg: SolverConfig) -> RunTrace:
    """Iterate ``x <- x - f(x) grad / |grad|^2`` until ``|f(x)| < eps``.

    In accelerated mode the perturbation argument is ``-f(x) / |grad_prev|``,
    the scalar rule with the previous gradient norm as the slope.
    """
    prec = cfg.precision
    isfinite = prec.isfinite
    g, eps, bound = cfg.resolved()
    delta = g.floor_delta
    ev = Counted(f)
    x = [prec.c(v) for v in x0]

    start = perf_counter()
    fx = ev(x)
    iterates = [x]
    residuals = [abs(fx)]
    slope_prev = None
    n = 0
    while True:
        if abs(fx) < eps:
            status = Status.CONVERGED
            break
        if not (isfinite(fx) and all(isfinite(v) for v in x)) or max(abs(v) for v in x) > bound:
            status = Status.DIVERGED
            break
        if n >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        s_arg = None
        if cfg.accelerated and slope_prev is not None and slope_prev >= delta and slope_prev > 0:
            s_arg = -fx / slope_prev
        try:
            grad = estimate_gradient(ev, x, g, fx=fx, s_arg=s_arg, prec=prec)
            step = polyak_step(fx, grad)
        except (DivergedError, DegenerateDenominator, DegenerateGradient) as exc:
            status = exc.status
            break
        x = [a + b for a, b in zip(x, step)]
        slope_prev = sum(c * c for c in grad) ** 0.5
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
        gamma_history_kept=cfg.accelerated,
        evaluations=ev.calls,
        eps=eps,
    )
