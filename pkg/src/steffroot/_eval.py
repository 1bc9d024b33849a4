from __future__ import annotations

import math

MATH_ERRORS = (OverflowError, ZeroDivisionError, ValueError)


class Counted:
    """Wrap an evaluator: count calls and turn math errors into NaN."""

    __slots__ = ("fn", "calls")

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, *args):
        self.calls += 1
        try:
            return self.fn(*args)
        except MATH_ERRORS:
            return math.nan
