import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cholinv import (
    OpCounter,
    SingularDiagonalError,
    ZeroPivotError,
    cholesky_upper,
    ldl_upper,
    solve_ldl_lower,
    solve_lower,
    solve_upper,
    triangular_inverse,
)

from conftest import random_pd, random_upper


def test_lower_identity(backend):
    y = np.array([1 + 2j, -3, 0.5j])
    np.testing.assert_array_equal(solve_lower(np.eye(3), y), y)


def test_lower_worked(backend):
    b = solve_lower([[2, 0], [1, 1]], [4, 3])
    np.testing.assert_allclose(b, [2, 1], rtol=1e-15)


def test_lower_ignores_upper_triangle(backend):
    b = solve_lower([[2, 99], [1, 1]], [4, 3])
    np.testing.assert_allclose(b, [2, 1], rtol=1e-15)


def test_lower_singular(backend):
    with pytest.raises(SingularDiagonalError) as info:
        solve_lower([[1, 0], [1, 0]], [1, 1])
    assert info.value.index == 2


def test_upper_identity(backend):
    y = np.array([1 + 2j, -3, 0.5j])
    np.testing.assert_array_equal(solve_upper(np.eye(3), y), y)


def test_upper_worked(backend):
    np.testing.assert_allclose(solve_upper([[2, 1], [0, 2]], [3, 4]), [0.5, 2], rtol=1e-15)


def test_upper_diagonal(backend):
    d = np.array([2.0, -4.0, 0.5j])
    b = np.array([1.0, 1.0, 1.0])
    np.testing.assert_allclose(solve_upper(np.diag(d), b), b / d, rtol=1e-15)


def test_upper_singular(backend):
    with pytest.raises(SingularDiagonalError):
        solve_upper([[0, 1], [0, 1]], [1, 1])


def test_ldl_lower_identity(backend):
    y = np.array([1.0, 2j])
    np.testing.assert_array_equal(solve_ldl_lower(np.eye(2), [1, 1], y), y)


def test_ldl_lower_worked(backend):
    b = solve_ldl_lower([[1, 0.5], [0, 1]], [2, 1.5], [2, 2.5])
    np.testing.assert_allclose(b, [1, 1], rtol=1e-15)


def test_ldl_lower_zero_pivot(backend):
    with pytest.raises(ZeroPivotError):
        solve_ldl_lower(np.eye(2), [1, 0], [1, 1])


def test_ldl_pipeline(backend):
    a = random_pd(9, 3)
    res = ldl_upper(a)
    y = np.arange(9) + 1j
    x = solve_upper(res.R, solve_ldl_lower(res.R, res.d, y))
    np.testing.assert_allclose(a @ x, y, rtol=1e-12, atol=1e-12)


def test_cholesky_pipeline(backend):
    a = random_pd(9, 3)
    r = cholesky_upper(a).R
    y = np.arange(9) - 2j
    x = solve_upper(r, solve_lower(r.conj().T, y))
    np.testing.assert_allclose(a @ x, y, rtol=1e-12, atol=1e-12)


def test_rhs_length_checked():
    with pytest.raises(ValueError):
        solve_upper(np.eye(3), [1, 2])


def test_tri_inverse_identity(backend):
    np.testing.assert_array_equal(triangular_inverse(np.eye(4)), np.eye(4))


def test_tri_inverse_diagonal(backend):
    np.testing.assert_array_equal(triangular_inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_tri_inverse_worked(backend):
    r = np.array([[2.0, 1.0], [0.0, 2.0]])
    m = triangular_inverse(r)
    np.testing.assert_allclose(m, [[0.5, -0.25], [0, 0.5]], rtol=1e-15)
    assert np.abs(r @ m - np.eye(2)).max() <= 1e-14


@pytest.mark.parametrize("n", [1, 5, 33])
def test_tri_inverse_structural_zeros(n):
    m = triangular_inverse(random_upper(n, n))
    assert np.all(m[np.tril_indices(n, -1)] == 0)


@pytest.mark.parametrize("n", [4, 32, 128])
def test_residuals(n):
    for seed in range(3):
        r = random_upper(n, seed)
        l = r.conj().T
        y = np.random.default_rng(seed).normal(size=n) + 0j
        cond = np.linalg.cond(r)
        assert np.linalg.norm(l @ solve_lower(l, y) - y) <= 1e-12 * np.linalg.norm(y) * cond
        x = np.random.default_rng(seed + 100).normal(size=n) + 1j
        np.testing.assert_allclose(solve_upper(r, r @ x), x, rtol=1e-12 * cond)
        assert np.linalg.norm(solve_upper(r, r @ x) - x) <= 1e-12 * np.linalg.norm(x) * cond


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40))
def test_substitution_counts(n):
    r = random_upper(n, n)
    for solve, mat in ((solve_lower, r.conj().T), (solve_upper, r)):
        c = OpCounter()
        solve(mat, np.ones(n), c)
        assert (c.cmul, c.cdiv, c.cadd, c.csqrt) == (n * (n - 1) // 2, n, n * (n - 1) // 2, 0)


def test_ldl_lower_counts():
    n = 20
    c = OpCounter()
    solve_ldl_lower(np.triu(np.ones((n, n))), np.ones(n), np.ones(n), c)
    assert c.cmul == n * (n - 1) // 2 and c.cdiv == n
