import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pillaireg.errors import NotPositiveDefinite
from pillaireg.linalg import (
    as_matrix,
    as_vector,
    center_columns,
    centered_gram_inverse_apply,
    cholesky,
    gram,
    spd_solve,
)


def test_construction_rejects_non_finite():
    with pytest.raises(ValueError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(ValueError):
        as_vector([np.inf, 1.0])
    with pytest.raises(ValueError):
        as_matrix(np.zeros((0, 2)))


def test_constructed_arrays_are_read_only():
    m = as_matrix([[1.0, 2.0]])
    with pytest.raises(ValueError):
        m[0, 0] = 3.0


@pytest.mark.parametrize(
    "col, expected",
    [
        ([1, 2, 3], [-1, 0, 1]),
        ([4.5, 4.5, 4.5], [0, 0, 0]),
        ([0, 1, 0, 3], [-1, 0, -1, 2]),
    ],
)
def test_center_columns_examples(col, expected):
    out = center_columns(np.array(col, dtype=float)[:, None])
    np.testing.assert_array_equal(out[:, 0], expected)


def test_gram_examples():
    np.testing.assert_array_equal(gram([[3.0], [4.0]]), [[25.0]])
    np.testing.assert_array_equal(gram(np.eye(2)), np.eye(2))
    m = np.column_stack([np.ones(3), [1.0, 2.0, 3.0]])
    np.testing.assert_array_equal(gram(m), [[3, 6], [6, 14]])


def test_spd_solve_examples():
    np.testing.assert_allclose(spd_solve([[4.0]], [[2.0]]), [[0.5]])
    rhs = np.arange(6.0).reshape(3, 2)
    np.testing.assert_allclose(spd_solve(np.eye(3), rhs), rhs)
    np.testing.assert_allclose(spd_solve([[2.0, 1.0], [1.0, 2.0]], [1.0, 1.0]), [1 / 3, 1 / 3], rtol=1e-15)


def test_spd_solve_reports_failing_pivot():
    s = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(NotPositiveDefinite) as info:
        spd_solve(s, [1.0, 2.0, 3.0])
    assert info.value.pivot == 1


def test_pivot_threshold_is_scale_relative():
    # 1e-8 pivot is fine for unit scale but fails once the diagonal is 1e6 larger
    spd_solve([[1.0, 0.0], [0.0, 1e-8]], [1.0, 1.0])
    with pytest.raises(NotPositiveDefinite):
        cholesky([[1e6, 0.0], [0.0, 1e-8]])


def test_spd_solve_rejects_asymmetric():
    with pytest.raises(ValueError):
        spd_solve([[2.0, 1.0], [0.0, 2.0]], [1.0, 1.0])


def test_centered_gram_inverse_apply_examples():
    np.testing.assert_allclose(centered_gram_inverse_apply([[-1.0], [0.0], [1.0]], [[1.0]]), [[0.5]])
    raw = np.random.default_rng(3).standard_normal((6, 2))
    q, _ = np.linalg.qr(raw - raw.mean(axis=0))  # orthonormal, and centered since 1 ⟂ span
    rhs = np.array([[1.0, 2.0], [3.0, 4.0]])
    t = q.T @ q
    np.testing.assert_allclose(t, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(centered_gram_inverse_apply(q, rhs), rhs, atol=1e-12)


def test_centered_gram_inverse_apply_matches_adjugate():
    y = np.random.default_rng(11).standard_normal((4, 2))
    yc = y - y.mean(axis=0)
    a, b, d = (yc[:, 0] @ yc[:, 0]), (yc[:, 0] @ yc[:, 1]), (yc[:, 1] @ yc[:, 1])
    adj_inverse = np.array([[d, -b], [-b, a]]) / (a * d - b * b)
    np.testing.assert_allclose(centered_gram_inverse_apply(y, np.eye(2)), adj_inverse, rtol=1e-12)


def test_centered_gram_inverse_apply_same_as_uncentered_formula():
    y = np.random.default_rng(5).standard_normal((9, 3)) + 2.0
    n = y.shape[0]
    t_alt = y.T @ y - np.outer(y.sum(axis=0), y.sum(axis=0)) / n
    rhs = np.random.default_rng(6).standard_normal((3, 2))
    np.testing.assert_allclose(centered_gram_inverse_apply(y, rhs), np.linalg.solve(t_alt, rhs), rtol=1e-9)


matrices = st.builds(
    lambda seed, n, k: np.random.default_rng(seed).standard_normal((n, k)) * 10 ** np.random.default_rng(seed).uniform(-3, 3),
    st.integers(0, 2**32 - 1),
    st.integers(1, 30),
    st.integers(1, 6),
)


@given(matrices)
def test_gram_is_exactly_symmetric(m):
    g = gram(m)
    assert np.array_equal(g, g.T)


@given(matrices)
def test_center_columns_idempotent(m):
    once = center_columns(m)
    twice = center_columns(once)
    assert np.max(np.abs(once - twice)) <= 1e-14 * max(1.0, np.abs(m).max())
    assert np.all(np.abs(once.mean(axis=0)) <= 1e-13 * max(1.0, np.abs(m).max()))


def _spd_case(seed: int, m: int, r: int, max_log_cond: float):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((m, m)))
    eig = np.logspace(0, rng.uniform(0, max_log_cond), m)
    s = (q * eig) @ q.T
    return 0.5 * (s + s.T), rng.standard_normal((m, r))


@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.integers(1, 4))
def test_spd_solve_residual_condition_up_to_1e8(seed, m, r):
    # Stated contract: residual ≤ 1e-10·(1 + ‖rhs‖) for cond(S) ≤ 1e8.  A double
    # result X can only satisfy ‖SX - rhs‖ ≈ eps·‖S‖‖X‖ ≈ eps·cond·‖rhs‖ ≈ 1e-8
    # at the top of that range, so this fails for any backward-stable solver.
    s, rhs = _spd_case(seed, m, r, 8.0)
    x = spd_solve(s, rhs)
    assert np.max(np.abs(s @ x - rhs)) <= 1e-10 * (1 + np.abs(rhs).max())


@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.integers(1, 4))
def test_spd_solve_residual_condition_up_to_1e4(seed, m, r):
    s, rhs = _spd_case(seed, m, r, 4.0)
    x = spd_solve(s, rhs)
    assert np.max(np.abs(s @ x - rhs)) <= 1e-10 * (1 + np.abs(rhs).max())


@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_spd_solve_is_backward_stable(seed, m):
    s, rhs = _spd_case(seed, m, 2, 8.0)
    x = spd_solve(s, rhs)
    bound = 50 * m * np.finfo(float).eps * np.abs(s).max() * np.abs(x).max()
    assert np.max(np.abs(s @ x - rhs)) <= bound


@given(st.integers(0, 2**32 - 1), st.integers(1, 10))
def test_centered_gram_inverse_of_total_is_identity(seed, k):
    rng = np.random.default_rng(seed)
    y = rng.standard_normal((k + 5, k))
    t = gram(center_columns(y))
    np.testing.assert_allclose(centered_gram_inverse_apply(y, t), np.eye(k), atol=1e-8)
