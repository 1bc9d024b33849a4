"""Solver configuration, named parameter profiles, and run traces."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .gfun import StabilizerFn
from .numerics import DOUBLE, Precision, extended


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    DIVERGED = "Diverged"
    DEGENERATE_DENOMINATOR = "DegenerateDenominator"
    SINGULAR_JACOBIAN = "SingularJacobian"
    DEGENERATE_GRADIENT = "DegenerateGradient"

    def __str__(self):
        return self.value


METHODS = ("normal", "accelerated")


@dataclass(frozen=True)
class SolverConfig:
    method: str = "normal"
    g: StabilizerFn = field(default_factory=StabilizerFn)
    eps: float = 1e-8
    max_iter: int = 200
    divergence_bound: float = 1e12
    precision: Precision = DOUBLE

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")

    @property
    def accelerated(self) -> bool:
        return self.method == "accelerated"

    @property
    def floor_delta(self):
        """Effective floor: explicit value, else eps/2 (0 for the identity kind)."""
        if self.g.floor_delta is not None:
            return self.precision.tol(self.g.floor_delta)
        if self.g.kind == "identity":
            return self.precision.c(0)
        return self.precision.tol(self.eps) / 2

    def resolved(self):
        """Return ``(g, eps, divergence_bound)`` converted into the active precision."""
        prec = self.precision
        g = self.g.with_floor(self.floor_delta)
        return g, prec.tol(self.eps), prec.tol(self.divergence_bound)

    def with_(self, **changes) -> "SolverConfig":
        return replace(self, **changes)

    def describe(self) -> dict:
        return {
            "method": self.method,
            "g": self.g.kind,
            "eps": self.eps,
            "delta": float(self.floor_delta),
            "max_iter": self.max_iter,
            "divergence_bound": self.divergence_bound,
            "precision": self.precision.mode if not self.precision.is_extended
            else f"extended({self.precision.digits})",
        }


PROFILES = {
    "table2": dict(eps=1e-25, max_iter=1000, precision=extended(100)),
    "table3": dict(eps=1e-8, max_iter=200, precision=DOUBLE),
    "table4": dict(eps=1e-8, max_iter=200, precision=DOUBLE),
}


def profile(name: str, method: str = "normal", g: StabilizerFn | None = None, **overrides) -> SolverConfig:
    """Build a :class:`SolverConfig` from one of the named parameter sets."""
    try:
        params = dict(PROFILES[name])
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; expected one of {sorted(PROFILES)}") from None
    params.update({k: v for k, v in overrides.items() if v is not None})
    return SolverConfig(method=method, g=g if g is not None else StabilizerFn("tanh"), **params)


@dataclass
class RunTrace:
    iterates: list
    residual_norms: list
    status: Status
    iterations_used: int
    wall_time: float = 0.0
    gamma_history_kept: bool = False
    evaluations: int = 0
    eps: object = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def final(self):
        return self.iterates[-1]

    @property
    def final_residual(self):
        return self.residual_norms[-1]
