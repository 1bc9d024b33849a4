"""Exceptions raised by the low-level estimators.

Solvers catch these and record the matching :class:`~steffroot.config.Status`
on the trace; they never escape ``solve_*``.
"""

from .config import Status


class SolverFailure(ArithmeticError):
    status = None


class DivergedError(SolverFailure):
    status = Status.DIVERGED


class DegenerateDenominator(SolverFailure):
    status = Status.DEGENERATE_DENOMINATOR


class DegenerateGradient(SolverFailure):
    status = Status.DEGENERATE_GRADIENT


class SingularJacobian(SolverFailure):
    status = Status.SINGULAR_JACOBIAN
