"""Registry of the benchmark problems: scalar functions f1-f14, systems
f15-f21 and the scalar fields s1-s5.

Evaluators are built per precision backend (``problem.evaluator(prec)``), so
the same closed form runs in double or extended arithmetic.  Known roots of
the non-factored functions were refined with an independent mpmath root
search and are stored to 17+ digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .numerics import DOUBLE, Precision, norm2
from .system_solver import VectorFunction

SQRT2 = 1.4142135623730950488


@dataclass(frozen=True)
class Problem:
    id: str
    kind: str  # "scalar" | "system" | "field"
    dim: int
    factory: Callable = field(repr=False, compare=False)
    known_roots: tuple = ()
    default_x0: tuple = ()
    box: tuple = ()
    formula: str = ""
    notes: str = ""
    complex_factory: Callable | None = field(default=None, repr=False, compare=False)
    _bound: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.box:
            object.__setattr__(self, "box", tuple((-10.0, 10.0) for _ in range(self.dim)))

    def evaluator(self, prec: Precision = DOUBLE):
        """The evaluator in ``prec``: a callable, or a :class:`VectorFunction` for systems."""
        return _bind(self, prec)

    @property
    def is_vector(self) -> bool:
        return self.kind != "scalar"

    def residual(self, x, prec: Precision = DOUBLE):
        f = self.evaluator(prec)
        if self.kind == "system":
            return norm2(f([prec.c(v) for v in x]))
        if self.kind == "field":
            return abs(f([prec.c(v) for v in x]))
        return abs(f(prec.c(x)))


def _bind(problem, prec):
    try:
        return problem._bound[prec]
    except KeyError:
        pass
    built = problem.factory(prec)
    if problem.kind == "system" and not isinstance(built, VectorFunction):
        built = VectorFunction(built)
    problem._bound[prec] = built
    return built


# ---------------------------------------------------------------------------
# scalar functions

def _f1(m):
    return lambda x: x**3 - 9 * x**2 + 28 * x - 30


def _f2(m):
    sin, cos = m.sin, m.cos
    return lambda x: sin(x) + x * cos(x)


def _f3(m):
    exp, r2 = m.exp, m.sqrt(m.c(2))
    return lambda x: exp(x * x) - exp(r2 * x)


def _f4(m):
    sin = m.sin
    return lambda x: (sin(x) - x / 2) ** 2


def _f5(m):
    return m.atan


def _f6(m):
    return lambda x: (x - 1) ** 6 - 1


def _f7(m):
    sin = m.sin
    return lambda x: 4 * sin(x) - x + 1


def _f8(m):
    return lambda x: (x * x - 1) * (x * x + 1)


def _f9(m):
    a, b = m.c("1.5"), m.c("0.5")
    return lambda x: (x * x - 4) * (x + a) * (x - b)


def _f10(m):
    a, b = m.c("1.5"), m.c("0.5")
    return lambda x: (x + 2) * (x + a) ** 2 * (x - b) * (x - 2)


def _f11(m):
    return lambda x: (x - 1) ** 3 + 4 * (x - 1) ** 2 - 10


def _f12(m):
    sin, c = m.sin, m.c(14) / 10

    def f(x):
        u = x - c
        return sin(u) ** 2 - u * u + 1
    return f


def _f13(m):
    exp = m.exp
    return lambda x: x * x - exp(x) - 3 * x + 2


def _f14(m):
    exp, sin, cos, c = m.exp, m.sin, m.cos, m.c(5) / 4

    def f(x):
        u = x + c
        return u * exp(u * u) - sin(u) ** 2 + 3 * cos(u) + 5
    return f


# ---------------------------------------------------------------------------
# systems (each returns the list of component callables)

def _f15(m):
    exp, cos, sin = m.exp, m.cos, m.sin
    return [lambda v: v[0] + exp(v[1]) - cos(v[1]),
            lambda v: 3 * v[0] - v[1] - sin(v[1])]


def _f16(m):
    exp, sin = m.exp, m.sin
    return [lambda v: exp(v[0] * v[0]) + 8 * v[0] * sin(v[1]),
            lambda v: v[0] + v[1] - 1]


def _f17(m):
    sin, cos = m.sin, m.cos
    return [lambda v: sin(v[0]) + v[1] * cos(v[0]),
            lambda v: v[0] - v[1]]


def _f18(m):
    half, four = m.c("0.5"), m.c("4.0")
    return [lambda v: v[0] * v[0] - 2 * v[0] - v[1] + half,
            lambda v: v[0] * v[0] + 4 * v[1] * v[1] - four]


def _f19(m):
    exp, r2 = m.exp, m.sqrt(m.c(2))
    return [lambda v: exp(v[0] * v[0]) - exp(r2 * v[0]),
            lambda v: v[0] - v[1]]


def _f20(m):
    return [lambda v: v[1] * v[2] + v[3] * (v[1] + v[2]),
            lambda v: v[0] * v[2] + v[3] * (v[0] + v[2]),
            lambda v: v[0] * v[1] + v[3] * (v[0] + v[1]),
            lambda v: v[0] * v[1] + v[0] * v[2] + v[1] * v[2] - 1]


def _f21(m):
    # (x + iy)^3 - 1 expanded
    return [lambda v: v[0] ** 3 - 3 * v[0] * v[1] ** 2 - 1,
            lambda v: 3 * v[0] ** 2 * v[1] - v[1] ** 3]


# ---------------------------------------------------------------------------
# scalar fields

def _s1(m):
    return lambda v: v[0] * v[0] + v[1] * v[1]


def _s2(m):
    sin = m.sin
    return lambda v: v[0] * v[1] + (v[0] - v[1]) + 100 * sin(v[1])


def _s3(m):
    exp = m.exp
    return lambda v: v[0] * v[0] - (1 - exp(v[1]))


def _s4(m):
    return lambda v: (v[0] + v[1] + v[2] - 3) ** 2 + (v[0] * v[1] * v[2] - 1) ** 2


def _s5(m):
    sin, cos = m.sin, m.cos
    return lambda v: sin(v[0]) + 2 * sin(v[1]) + 3 * sin(v[2]) + 4 * cos(v[3])


# ---------------------------------------------------------------------------

def complex_to_planar(fc, id="planar", known_roots=(), default_x0=(0.5, 0.5), formula="",
                      box=((-2.0, 2.0), (-2.0, 2.0))) -> Problem:
    """Lift a complex function to the plane map ``(Re f(x+iy), Im f(x+iy))``.

    ``fc`` is either a plain callable on complex numbers or a factory
    ``prec -> callable`` (marked by a ``precision_factory`` attribute).
    """
    def factory(m):
        inner = fc(m) if getattr(fc, "precision_factory", False) else fc
        cplx = complex if m.ctx is None else m.ctx.mpc
        return [lambda v: inner(cplx(v[0], v[1])).real,
                lambda v: inner(cplx(v[0], v[1])).imag]
    return Problem(id, "system", 2, factory, tuple(tuple(r) for r in known_roots),
                   default_x0, box, formula or f"planar lift of {fc!r}")


def _precision_factory(fn):
    fn.precision_factory = True
    return fn


def planar(problem_id: str) -> Problem:
    """Planar lift of a registered polynomial scalar problem (roots stay real)."""
    base = get_problem(problem_id)
    if base.kind == "system" and base.dim == 2:
        return base
    if base.complex_factory is None:
        raise ValueError(f"{problem_id} has no complex extension")
    roots = tuple((float(r), 0.0) for r in base.known_roots)
    return complex_to_planar(_precision_factory(base.complex_factory), id=f"{problem_id}-planar",
                             known_roots=roots, formula=f"planar lift of {base.formula}")


def _scalar(id, factory, roots, x0, formula, notes="", analytic=False):
    return Problem(id, "scalar", 1, factory, tuple(roots), (x0,), formula=formula, notes=notes,
                   complex_factory=factory if analytic else None)


_F2_ROOTS = (0.0, 2.0287578381104342236, -2.0287578381104342236, 4.9131804394348836888,
             -4.9131804394348836888, 7.9786657124132407552, -7.9786657124132407552)

PROBLEMS = {p.id: p for p in [
    _scalar("f1", _f1, [3.0], 1.0, "x^3 - 9x^2 + 28x - 30", analytic=True),
    _scalar("f2", _f2, _F2_ROOTS, 1.5, "sin(x) + x cos(x)"),
    _scalar("f3", _f3, [0.0, SQRT2], 2.0, "exp(x^2) - exp(sqrt(2) x)"),
    _scalar("f4", _f4, [0.0, 1.8954942670339809471, -1.8954942670339809471], -1.5,
            "(sin(x) - x/2)^2", notes="all roots double"),
    _scalar("f5", _f5, [0.0], 0.5, "atan(x)"),
    _scalar("f6", _f6, [0.0, 2.0], 3.0, "(x - 1)^6 - 1", analytic=True),
    _scalar("f7", _f7, [2.7020613733260402218, -0.342185052924458221, -2.2100839440926608962], 2.0,
            "4 sin(x) - x + 1"),
    _scalar("f8", _f8, [1.0, -1.0], 3.0, "(x^2 - 1)(x^2 + 1)", analytic=True),
    _scalar("f9", _f9, [-2.0, -1.5, 0.5, 2.0], 0.0, "(x^2 - 4)(x + 1.5)(x - 0.5)", analytic=True),
    _scalar("f10", _f10, [-2.0, -1.5, 0.5, 2.0], 3.0, "(x + 2)(x + 1.5)^2 (x - 0.5)(x - 2)",
            notes="double root at -1.5", analytic=True),
    _scalar("f11", _f11, [2.3652300134140968458], 3.5, "(x - 1)^3 + 4(x - 1)^2 - 10", analytic=True),
    _scalar("f12", _f12, [2.804491648215341226, -0.0044916482153412260351], 3.0,
            "sin(x - 1.4)^2 - (x - 1.4)^2 + 1"),
    _scalar("f13", _f13, [0.25753028543986076046], 1.0, "x^2 - exp(x) - 3x + 2"),
    _scalar("f14", _f14, [-2.457647827130918927], -1.0,
            "(x + 5/4) exp((x + 5/4)^2) - sin(x + 5/4)^2 + 3 cos(x + 5/4) + 5"),
    Problem("f15", "system", 2, _f15, ((0.0, 0.0),), (0.5, 0.5),
            formula="(x + exp(y) - cos(y), 3x - y - sin(y))"),
    Problem("f16", "system", 2, _f16, ((-0.14028501081118963404, 1.140285010811189634),
                                        (-1.4197136534141969761, 2.4197136534141969761)), (0.5, 0.5),
            formula="(exp(x^2) + 8x sin(y), x + y - 1)"),
    Problem("f17", "system", 2, _f17, tuple((r, r) for r in _F2_ROOTS), (1.0, 0.5),
            formula="(sin(x) + y cos(x), x - y)"),
    Problem("f18", "system", 2, _f18, ((-0.22221455505972182403, 0.99380841859983379016),
                                        (1.900676726367065771, 0.31121856541929426977)), (0.0, 1.5),
            formula="(x^2 - 2x - y + 0.5, x^2 + 4y^2 - 4)"),
    Problem("f19", "system", 2, _f19, ((0.0, 0.0), (SQRT2, SQRT2)), (2.0, 2.0),
            formula="(exp(x^2) - exp(sqrt(2) x), x - y)"),
    Problem("f20", "system", 4, _f20,
            ((0.57735026918962576451,) * 3 + (-0.28867513459481288225,),
             (-0.57735026918962576451,) * 3 + (0.28867513459481288225,)),
            (0.5, 0.5, 0.5, -0.2),
            formula="(yz + w(y + z), xz + w(x + z), xy + w(x + y), xy + xz + yz - 1)"),
    Problem("f21", "system", 2, _f21, ((1.0, 0.0), (-0.5, 0.86602540378443864676),
                                        (-0.5, -0.86602540378443864676)), (0.5, 0.5),
            formula="(Re((x + iy)^3 - 1), Im((x + iy)^3 - 1))"),
    Problem("s1", "field", 2, _s1, ((0.0, 0.0),), (1.0, 0.0), formula="x^2 + y^2",
            notes="root is a stationary point"),
    Problem("s2", "field", 2, _s2, (), (1.0, 1.0), formula="xy + (x - y) + 100 sin(y)"),
    Problem("s3", "field", 2, _s3, (), (1.0, 1.0), formula="x^2 - (1 - exp(y))"),
    Problem("s4", "field", 3, _s4, ((1.0, 1.0, 1.0),), (2.0, 0.5, 0.5),
            formula="(x + y + z - 3)^2 + (xyz - 1)^2"),
    Problem("s5", "field", 4, _s5, (), (1.0, 1.0, 1.0, 1.0),
            formula="sin(x) + 2 sin(y) + 3 sin(z) + 4 cos(t)"),
]}


def get_problem(id: str) -> Problem:
    try:
        return PROBLEMS[id]
    except KeyError:
        raise KeyError(f"unknown problem {id!r}; valid ids: {', '.join(PROBLEMS)}") from None


def problem_ids(kind: str | None = None) -> list:
    return [p.id for p in PROBLEMS.values() if kind is None or p.kind == kind]


def self_check(tol: float = 1e-10) -> dict:
    """Residual of every stored root in double precision; raises if any exceeds ``tol``."""
    worst = {}
    for p in PROBLEMS.values():
        for r in p.known_roots:
            res = float(p.residual(r))
            worst[p.id] = max(worst.get(p.id, 0.0), res)
            if not res <= tol:
                raise AssertionError(f"{p.id}: stored root {r} has residual {res:g}")
    return worst


self_check()
