import math

import pytest
from hypothesis import given, strategies as st

from steffroot import RunTrace, Status, acoc, classify_outcome
from steffroot.analysis import acoc_sequence


def trace(xs, status=Status.CONVERGED, eps=1e-30):
    return RunTrace(iterates=list(xs), residual_norms=[0.0] * len(xs), status=status,
                    iterations_used=len(xs) - 1, wall_time=0.0, gamma_history_kept=False,
                    evaluations=0, eps=eps)


def test_geometric_sequence_is_linear():
    xs = [2.0 ** -n for n in range(8)]
    assert acoc(xs) == pytest.approx(1.0, abs=1e-12)


def test_quadratic_sequence():
    # e0 = 0.5, e_{n+1} = e_n^2, six iterates; mpmath reference q = 2.043271
    xs = [0.5 ** (2 ** n) for n in range(6)]
    assert acoc(xs) == pytest.approx(2.04, abs=0.01)
    assert acoc(xs) == pytest.approx(2.04327144419017, rel=1e-9)


def test_too_few_iterates():
    assert acoc([1.0, 0.5, 0.25, 0.125, 0.0625]) is None
    assert acoc(trace([1.0, 0.5, 0.25, 0.125, 0.0625])) is None


def test_cut_at_zero_step():
    xs = [1.0, 0.5, 0.25, 0.125, 0.0625, 0.0625, 0.0625]
    assert acoc(xs) == pytest.approx(1.0)


def test_vector_iterates_use_euclidean_steps():
    xs = [[3 * 2.0 ** -n, 4 * 2.0 ** -n] for n in range(7)]
    assert acoc(xs) == pytest.approx(1.0, abs=1e-12)


def test_trace_eps_truncates():
    xs = [10.0 ** -(2 ** n) for n in range(6)]
    assert acoc(trace(xs, eps=1e-20)) is not None
    assert len(acoc_sequence(xs, eps=1e-3)) < len(acoc_sequence(xs))


@given(st.floats(-100, 100), st.floats(0.1, 0.9))
def test_shift_invariance(shift, ratio):
    xs = [ratio ** n for n in range(8)]
    q0 = acoc(xs)
    q1 = acoc([x + shift for x in xs])
    assert q1 == pytest.approx(q0, abs=1e-6)


def test_classify_matches_nearest_root():
    out = classify_outcome(trace([1.0, 0.999999]), [3.0, 1.0], 1e-4)
    assert out.converged and out.matched_root == 1 and out.root == 1.0
    assert out.distance == pytest.approx(1e-6)


def test_classify_new_root():
    out = classify_outcome(trace([1.0, 7.0]), [3.0, 1.0], 1e-4)
    assert out.new_root and out.matched_root is None and out.root == 7.0


def test_classify_nonconvergent():
    out = classify_outcome(trace([1.0, 2.0], status=Status.MAX_ITERATIONS), [2.0], 1e-4)
    assert not out.converged and out.matched_root is None and not out.new_root


def test_classify_vector_roots_and_acoc():
    xs = [[1 + 2.0 ** -n, 2.0 ** -n] for n in range(10)]
    out = classify_outcome(trace(xs), [(1.0, 0.0)], 1e-2, with_acoc=True)
    assert out.matched_root == 0
    assert out.q_estimate == pytest.approx(1.0)


def test_classify_rejects_bad_tol():
    with pytest.raises(ValueError):
        classify_outcome(trace([1.0]), [1.0], 0.0)
