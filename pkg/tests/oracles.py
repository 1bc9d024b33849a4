"""Independent reference implementations used by the tests."""

import math


def textbook_steffensen(f, x0, n_iter, eps, isfinite=math.isfinite):
    """x <- x - f(x)^2 / (f(x + f(x)) - f(x)), stopping like a careful textbook loop."""
    xs = [x0]
    x = x0
    for _ in range(n_iter):
        try:
            fx = f(x)
            if not abs(fx) >= eps or not isfinite(fx):
                break
            d = f(x + fx) - fx
            if not isfinite(d) or d == 0:
                break
            # fx * fx is the correctly rounded square; libm pow(fx, 2) can be 1 ulp off
            x = x - fx * fx / d
        except (OverflowError, ZeroDivisionError, ValueError):
            break
        xs.append(x)
    return xs


def central_difference_jacobian(components, x, h=1e-7):
    k = len(x)
    J = []
    for fi in components:
        row = []
        for j in range(k):
            xp = list(x)
            xm = list(x)
            xp[j] += h
            xm[j] -= h
            row.append((fi(xp) - fi(xm)) / (2 * h))
        J.append(row)
    return J


def central_difference_gradient(f, x, h=1e-7):
    return central_difference_jacobian([f], x, h)[0]


class Counter:
    """Counting wrapper around a callable."""

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, *a):
        self.calls += 1
        return self.fn(*a)
