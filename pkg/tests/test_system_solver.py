import math

import numpy as np
import pytest

from oracles import Counter, central_difference_jacobian
from steffroot import (SolverConfig, StabilizerFn, Status, VectorFunction, estimate_jacobian, get_problem,
                       profile, solve_scalar, solve_system, t_operator)
from steffroot.system_solver import GammaState

IDENTITY = StabilizerFn("identity", 0)
KINDS = ["identity", "tanh", "clamp", "clamp_literal_max"]


def affine(A, b):
    return VectorFunction([(lambda v, r=r, c=c: sum(a * x for a, x in zip(r, v)) + c) for r, c in zip(A, b)])


def test_t_operator_examples():
    f = VectorFunction([lambda v: v[0], lambda v: v[1]])
    assert t_operator(f, [2.0, 0.0], 0, 0, 2.0) == 1.0
    f18 = get_problem("f18").evaluator()
    s = math.tanh(0.5)
    T = t_operator(f18, [0.0, 0.0], 0, 0, s)
    assert T == pytest.approx(s - 2, rel=1e-14)
    assert T == pytest.approx(-1.537883, abs=1e-6)


def test_estimate_jacobian_examples():
    f = VectorFunction([lambda v: 3 * v[0] + v[1], lambda v: v[0] - 2 * v[1]])
    est = estimate_jacobian(f, [1.0, 1.0], IDENTITY)
    assert est.matrix == [[3.0, 1.0], [1.0, -2.0]]
    assert est.evaluations_used == 6
    sq = VectorFunction([lambda v: v[0] ** 2, lambda v: v[1] ** 2])
    est = estimate_jacobian(sq, [1.0, 2.0], IDENTITY)
    assert est.perturbations == [1.0, 4.0]
    assert est.matrix == [[3.0, 0.0], [0.0, 8.0]]


@pytest.mark.parametrize("kind", KINDS)
def test_affine_jacobian_exact(kind):
    rng = np.random.default_rng(21)
    g = StabilizerFn(kind, 0)
    for _ in range(25):
        k = int(rng.integers(2, 5))
        A = rng.uniform(-3, 3, (k, k))
        b = rng.uniform(-3, 3, k)
        x = rng.uniform(-2, 2, k).tolist()
        est = estimate_jacobian(affine(A.tolist(), b.tolist()), x, g)
        err = np.linalg.norm(np.array(est.matrix) - A) / np.linalg.norm(A)
        assert err <= 1e-12


def test_jacobian_matches_central_differences_near_root():
    f = get_problem("f15").evaluator()
    rng = np.random.default_rng(2)
    checked = 0
    for _ in range(50):
        x = (rng.normal(size=2) * 1e-4).tolist()
        r = math.hypot(*f(x))
        if r > 1e-3:
            continue
        est = estimate_jacobian(f, x, StabilizerFn("tanh", 0))
        ref = central_difference_jacobian(f.components, x)
        # forward-difference error is first order in the row step |f_i|
        assert np.max(np.abs(np.array(est.matrix) - ref)) <= 2 * r + 1e-8
        checked += 1
    assert checked > 10


def test_jacobian_estimate_consistency_shrinking():
    # error against the central-difference oracle shrinks with the residual
    f = get_problem("f18").evaluator()
    root = get_problem("f18").known_roots[0]
    errs = []
    for t in (1e-2, 1e-3, 1e-4, 1e-5):
        x = [root[0] + t, root[1] - t]
        est = estimate_jacobian(f, x, StabilizerFn("tanh", 0))
        ref = np.array(central_difference_jacobian(f.components, x))
        errs.append(np.linalg.norm(np.array(est.matrix) - ref) / np.linalg.norm(ref))
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < 1e-4


@pytest.mark.parametrize("method", ["normal", "accelerated"])
def test_affine_system_one_step(method):
    rng = np.random.default_rng(4)
    for _ in range(20):
        k = int(rng.integers(2, 5))
        A = rng.uniform(-3, 3, (k, k)) + 4 * np.eye(k)
        b = rng.uniform(-3, 3, k)
        f = affine(A.tolist(), (-b).tolist())
        x0 = rng.uniform(-5, 5, k).tolist()
        tr = solve_system(f, x0, SolverConfig(method, StabilizerFn("tanh"), eps=1e-9))
        assert tr.status is Status.CONVERGED
        assert tr.iterations_used == 1
        assert np.allclose(tr.final, np.linalg.solve(A, b), atol=1e-10)


def test_f15_converges_to_origin():
    cfg = profile("table2", "normal")
    tr = solve_system(get_problem("f15").evaluator(cfg.precision), [0.5, 0.5], cfg)
    assert tr.status is Status.CONVERGED
    assert max(abs(v) for v in tr.final) < 1e-20


def test_f21_accelerated_real_root():
    cfg = profile("table2", "accelerated")
    tr = solve_system(get_problem("f21").evaluator(cfg.precision), [1.3, 0.2], cfg)
    assert tr.status is Status.CONVERGED
    assert abs(tr.final[0] - 1) < 1e-20 and abs(tr.final[1]) < 1e-20


@pytest.mark.parametrize("pid", ["f15", "f16", "f17", "f18", "f19", "f20", "f21"])
@pytest.mark.parametrize("method", ["normal", "accelerated"])
def test_component_evaluation_budget(pid, method):
    p = get_problem(pid)
    counters = [Counter(c) for c in p.evaluator().components]
    tr = solve_system(VectorFunction(counters), list(p.default_x0), profile("table3", method, max_iter=30))
    k = p.dim
    assert tr.status in (Status.CONVERGED, Status.MAX_ITERATIONS)
    total = sum(c.calls for c in counters)
    assert total == k + tr.iterations_used * (k * k + k) == tr.evaluations
    assert all(c.calls == 1 + tr.iterations_used * (k + 1) for c in counters)


@pytest.mark.parametrize("pid", ["f1", "f8", "f11", "f13"])
@pytest.mark.parametrize("method", ["normal", "accelerated"])
def test_reduces_to_scalar(pid, method):
    f = get_problem(pid).evaluator()
    cfg = profile("table3", method)
    a = solve_scalar(f, 2.2, cfg)
    b = solve_system(VectorFunction([lambda v: f(v[0])]), [2.2], cfg)
    assert a.status is b.status
    assert a.iterations_used == b.iterations_used
    for x, (y,) in zip(a.iterates, b.iterates):
        assert y == pytest.approx(x, rel=1e-12, abs=1e-14)


def test_singular_jacobian_status():
    f = VectorFunction([lambda v: v[0] + v[1] - 1, lambda v: 2 * v[0] + 2 * v[1] + 1])
    tr = solve_system(f, [0.0, 0.0], SolverConfig("normal", StabilizerFn("tanh")))
    assert tr.status is Status.SINGULAR_JACOBIAN


def test_degenerate_row_with_identity():
    # x - y vanishes exactly on the diagonal, so the vanilla row step is zero
    tr = solve_system(get_problem("f17").evaluator(), [1.0, 1.0], SolverConfig("normal", IDENTITY))
    assert tr.status is Status.DEGENERATE_DENOMINATOR


def test_accelerated_row_steps_use_previous_matrix():
    f = get_problem("f18").evaluator()
    x = [0.1, 1.2]
    fx = f(x)
    prev = [[-2.5, -1.0], [0.3, 9.0]]
    gamma = GammaState()
    gamma.update(prev)
    est = estimate_jacobian(f, x, StabilizerFn("identity", 0), gamma, fx=fx)
    w = -np.linalg.solve(prev, fx)
    assert est.perturbations == pytest.approx(w.tolist(), rel=1e-14)
    assert est.evaluations_used == 4


def test_diverged_status():
    f = VectorFunction([lambda v: math.exp(v[0]) + v[1], lambda v: v[1]])
    tr = solve_system(f, [800.0, 0.0], SolverConfig("normal", IDENTITY))
    assert tr.status is Status.DIVERGED
