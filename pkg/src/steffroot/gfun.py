"""Stabilizer functions applied to the perturbation inside the divided difference."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

KINDS = ("identity", "tanh", "clamp", "clamp_literal_max")

# names used on the command line
CLI_NAMES = {"identity": "identity", "g1": "tanh", "g2": "clamp", "g2max": "clamp_literal_max"}
LABELS = {v: k for k, v in CLI_NAMES.items()}
LABELS["identity"] = "SM"


@dataclass(frozen=True)
class StabilizerFn:
    """A stabilizer ``g`` plus its lower magnitude floor.

    ``floor_delta=None`` means "not chosen yet": :class:`SolverConfig` resolves
    it to ``eps/2`` for the nonlinear kinds and to 0 for ``identity``.
    """

    kind: str = "tanh"
    floor_delta: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown stabilizer kind {self.kind!r}; expected one of {KINDS}")
        if self.floor_delta is not None and self.floor_delta < 0:
            raise ValueError("floor_delta must be non-negative")

    @property
    def label(self) -> str:
        return LABELS[self.kind]

    def with_floor(self, delta) -> "StabilizerFn":
        return replace(self, floor_delta=delta)

    def __call__(self, x, prec=None):
        return eval_g(self, x, prec)


def from_cli_name(name: str, floor_delta=None) -> StabilizerFn:
    try:
        kind = CLI_NAMES[name]
    except KeyError:
        raise ValueError(f"unknown g {name!r}; expected one of {sorted(CLI_NAMES)}") from None
    return StabilizerFn(kind, floor_delta)


def _sign(x):
    return -1 if x < 0 else 1


def _unit(x):
    # +-1 in the scalar type of x (sign(0) = +1)
    one = x * 0 + 1
    return -one if x < 0 else one


def eval_g(g: StabilizerFn, x, prec=None):
    """Apply ``g`` to ``x``, then enforce ``|g(x)| >= floor_delta``.

    ``prec`` supplies ``tanh`` for the active backend; without it the mpmath
    or math version is chosen from the argument type.
    """
    kind = g.kind
    if kind == "identity":
        y = x
    elif kind == "tanh":
        if prec is not None:
            y = prec.tanh(x)
        elif isinstance(x, (float, int)):
            y = math.tanh(x)
        else:
            y = x.context.tanh(x)
    elif kind == "clamp":
        y = x if abs(x) <= 1 else _unit(x)
    else:
        y = x if abs(x) >= 1 else _unit(x)

    delta = g.floor_delta
    if delta and abs(y) < delta:
        return _sign(x) * delta
    return y


def eval_phi(g: StabilizerFn, u, v, prec=None):
    """Two-argument form ``g(u*v)`` shared by the normal and accelerated schemes."""
    return eval_g(g, u * v, prec)
