"""Derivative-free root finding with stabilized Steffensen divided differences."""

from .analysis import Outcome, acoc, classify_outcome
from .config import PROFILES, RunTrace, SolverConfig, Status, profile
from .corpus import Problem, complex_to_planar, get_problem, planar, problem_ids
from .field_solver import estimate_gradient, polyak_step, solve_field
from .gfun import StabilizerFn, eval_g, eval_phi
from .numerics import DOUBLE, Precision, SingularMatrix, extended, lu_solve, norm2
from .scalar_solver import derivative_estimate, solve_scalar
from .system_solver import VectorFunction, estimate_jacobian, solve_system, t_operator

__version__ = "0.1.0"


def solve(problem, x0, cfg):
    """Run the solver that matches ``problem.kind``."""
    f = problem.evaluator(cfg.precision)
    if problem.kind == "scalar":
        x = x0[0] if isinstance(x0, (list, tuple)) else x0
        return solve_scalar(f, x, cfg)
    if problem.kind == "system":
        return solve_system(f, x0, cfg)
    return solve_field(f, x0, cfg)
