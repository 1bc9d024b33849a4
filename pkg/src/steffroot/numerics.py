"""Precision backends and the small amount of linear algebra the solvers need.

Two scalar backends exist: hardware ``float`` with the :mod:`math` functions,
and an mpmath context carrying a fixed number of decimal digits.  Solver code
only ever talks to a :class:`Precision` instance, so the same iteration runs
unchanged in either mode.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath

DOUBLE_PIVOT_TOL = 1e-12
EXTENDED_PIVOT_TOL = 1e-30


class SingularMatrix(ArithmeticError):
    """Raised by :func:`lu_solve` when a pivot falls below the threshold."""


class Precision:
    """Scalar arithmetic backend.

    Use :data:`DOUBLE` or :func:`extended` rather than instantiating directly.
    """

    def __init__(self, mode: str, digits: int | None = None):
        if mode not in ("double", "extended"):
            raise ValueError(f"unknown precision mode {mode!r}")
        self.mode = mode
        self.digits = digits
        if mode == "double":
            self.ctx = None
            self.sin, self.cos, self.tan = math.sin, math.cos, math.tan
            self.exp, self.log, self.sqrt = math.exp, math.log, math.sqrt
            self.tanh, self.atan = math.tanh, math.atan
            self.isfinite = math.isfinite
            self.pivot_tol = DOUBLE_PIVOT_TOL
        else:
            if digits is None or digits < 100:
                raise ValueError("extended precision needs at least 100 digits")
            ctx = mpmath.MPContext()
            ctx.dps = digits
            self.ctx = ctx
            self.sin, self.cos, self.tan = ctx.sin, ctx.cos, ctx.tan
            self.exp, self.log, self.sqrt = ctx.exp, ctx.log, ctx.sqrt
            self.tanh, self.atan = ctx.tanh, ctx.atan
            self.isfinite = ctx.isfinite
            self.pivot_tol = ctx.mpf(EXTENDED_PIVOT_TOL)

    @property
    def is_extended(self) -> bool:
        return self.mode == "extended"

    def c(self, value):
        """Convert a literal (int, float, or decimal string) into this backend."""
        if self.ctx is None:
            return float(value)
        return self.ctx.mpf(value)

    def tol(self, value):
        """Like :meth:`c`, but floats are read as their decimal literal (1e-25 is 10**-25)."""
        if self.ctx is not None and isinstance(value, float):
            return self.ctx.mpf(repr(value))
        return self.c(value)

    def complex(self, re, im):
        if self.ctx is None:
            return complex(re, im)
        return self.ctx.mpc(re, im)

    def vec(self, values) -> list:
        return [self.c(v) for v in values]

    def __repr__(self):
        if self.ctx is None:
            return "Precision('double')"
        return f"Precision('extended', {self.digits})"

    def __reduce__(self):
        return (get_precision, (self.mode, self.digits))

    def __eq__(self, other):
        return isinstance(other, Precision) and (self.mode, self.digits) == (other.mode, other.digits)

    def __hash__(self):
        return hash((self.mode, self.digits))


@lru_cache(maxsize=None)
def get_precision(mode: str, digits: int | None = None) -> Precision:
    return Precision(mode, digits if mode == "extended" else None)


DOUBLE = get_precision("double")


def extended(digits: int = 100) -> Precision:
    return get_precision("extended", digits)


def norm2(v):
    """Euclidean norm of a nonempty sequence of scalars."""
    if not v:
        raise ValueError("norm2 of an empty vector")
    if type(v[0]) is float:
        return math.hypot(*v)
    return sum(c * c for c in v) ** 0.5


def lu_solve(A, b, pivot_tol=None):
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    ``A`` is a square list of rows and is not modified.  A pivot smaller than
    ``pivot_tol * max|A|`` raises :class:`SingularMatrix`; the default
    threshold depends on whether the entries are floats or mpmath numbers.
    """
    n = len(A)
    if pivot_tol is None and n:
        pivot_tol = DOUBLE_PIVOT_TOL if type(A[0][0]) is float else EXTENDED_PIVOT_TOL
    if n == 2 and len(b) == 2 and len(A[0]) == 2 and len(A[1]) == 2:
        return _solve2(A, b, pivot_tol)
    if n == 0 or any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("lu_solve needs a square matrix matching b")
    scale = max(max(map(abs, row)) for row in A)
    if not scale > 0:
        raise SingularMatrix("zero matrix")
    threshold = pivot_tol * scale
    M = [list(row) for row in A]
    x = list(b)

    for col in range(n):
        p = max(range(col, n), key=lambda r: abs(M[r][col]))
        if not abs(M[p][col]) >= threshold:
            raise SingularMatrix(f"pivot {col} below {threshold}")
        if p != col:
            M[col], M[p] = M[p], M[col]
            x[col], x[p] = x[p], x[col]
        pivot = M[col][col]
        for r in range(col + 1, n):
            factor = M[r][col] / pivot
            if factor:
                row_r, row_c = M[r], M[col]
                for k in range(col + 1, n):
                    row_r[k] -= factor * row_c[k]
                x[r] -= factor * x[col]

    for i in range(n - 1, -1, -1):
        acc = x[i]
        row = M[i]
        for k in range(i + 1, n):
            acc -= row[k] * x[k]
        x[i] = acc / row[i]
    return x


def _solve2(A, b, pivot_tol):
    # the general elimination unrolled for 2x2; identical arithmetic
    (a00, a01), (a10, a11) = A
    b0, b1 = b
    scale = max(abs(a00), abs(a01), abs(a10), abs(a11))
    if not scale > 0:
        raise SingularMatrix("zero matrix")
    threshold = pivot_tol * scale
    if abs(a10) > abs(a00):
        a00, a01, a10, a11 = a10, a11, a00, a01
        b0, b1 = b1, b0
    if not abs(a00) >= threshold:
        raise SingularMatrix(f"pivot 0 below {threshold}")
    factor = a10 / a00
    if factor:
        a11 -= factor * a01
        b1 -= factor * b0
    if not abs(a11) >= threshold:
        raise SingularMatrix(f"pivot 1 below {threshold}")
    x1 = b1 / a11
    return [(b0 - a01 * x1) / a00, x1]


def matvec(A, v):
    return [sum(a * c for a, c in zip(row, v)) for row in A]
