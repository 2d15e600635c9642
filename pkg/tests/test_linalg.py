import numpy as np
import pytest
from scipy.linalg import eigvalsh_tridiagonal

from quasicompact.grunwald import weights_for
from quasicompact.linalg import (SingularMatrixError, assemble_A, assemble_T, compact_full,
                                 lu_factor, lu_solve, spectral_radius_estimate, tridiag_eigs)


def test_identity_tridiag():
    np.testing.assert_array_equal(assemble_T((0, 1, 0), 5).dense(), np.eye(5))


def test_tridiag_layout_and_matvec(rng):
    T = assemble_T((-0.1, 0.9, 0.2), 6)
    D = T.dense()
    assert D[1, 0] == -0.1 and D[0, 1] == 0.2 and D[3, 3] == 0.9
    v = rng.standard_normal((6, 3))
    np.testing.assert_allclose(T.matvec(v.copy()), D @ v)


def test_toeplitz_index_layout():
    w = np.array([10.0, 11.0, 12.0, 13.0])
    A = assemble_A(w, 3).dense()
    assert A[2, 0] == 13.0
    assert A[0, 1] == 10.0
    assert A[0, 2] == 0.0
    np.testing.assert_array_equal(np.diag(A), [11.0] * 3)


def test_alpha_two_gives_second_difference():
    A = assemble_A(weights_for((0, 0, 1), 2.0, 7), 6).dense()
    expected = np.diag(np.full(6, -2.0)) + np.diag(np.ones(5), 1) + np.diag(np.ones(5), -1)
    np.testing.assert_allclose(A, expected, atol=1e-15)


def test_toeplitz_matches_convolution_loop(rng):
    n = 9
    w = rng.standard_normal(n + 1)
    u = rng.standard_normal(n)
    got = assemble_A(w, n).dense() @ u
    brute = np.zeros(n)
    for i in range(n):
        for j in range(n):
            k = i - j + 1
            if 0 <= k <= n:
                brute[i] += w[k] * u[j]
    np.testing.assert_allclose(got, brute, rtol=1e-14, atol=1e-14)


def test_too_few_weights():
    with pytest.raises(ValueError):
        assemble_A(np.ones(3), 5)


def test_compact_full_includes_boundary_columns():
    C = compact_full((1.0, 2.0, 3.0), 4)
    assert C.shape == (3, 5)
    np.testing.assert_array_equal(C[:, 1:4], assemble_T((1.0, 2.0, 3.0), 3).dense())
    assert C[0, 0] == 1.0 and C[2, 4] == 3.0


def test_tridiag_eigs_examples():
    np.testing.assert_allclose(tridiag_eigs((0, 1, 0), 4), np.ones(4))
    got = np.sort(tridiag_eigs((0.15625, 0.6875, 0.15625), 3))
    np.testing.assert_allclose(got, [0.46653, 0.6875, 0.90847], atol=1e-5)
    c = (0.2, 0.7, 0.2)
    assert tridiag_eigs(c, 20).min() >= c[1] - 2 * abs(c[2])


@pytest.mark.parametrize("c", [(0.15625, 0.6875, 0.15625), (-0.09375, 0.9375, -0.3), (0.1, 0.5, 0.4)])
def test_tridiag_eigs_against_bisection(c):
    # symmetrize by a diagonal similarity, then bisect
    off = np.sign(c[2]) * np.sqrt(c[0] * c[2])
    ref = eigvalsh_tridiagonal(np.full(8, c[1]), np.full(7, off), lapack_driver="stebz")
    np.testing.assert_allclose(np.sort(tridiag_eigs(c, 8)), ref, atol=1e-10)
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(assemble_T(c, 8).dense()).real), ref,
                               atol=1e-10)


def test_tridiag_eigs_complex_spectrum():
    with pytest.raises(ValueError):
        tridiag_eigs((-0.1, 1.0, 0.2), 4)


def test_lu_small_examples():
    lu = lu_factor(np.eye(3))
    np.testing.assert_array_equal(lu_solve(lu, np.array([1.0, 2.0, 3.0])), [1, 2, 3])
    x = lu_solve(lu_factor(np.array([[2.0, 1.0], [1.0, 3.0]])), np.array([3.0, 4.0]))
    np.testing.assert_allclose(x, [1.0, 1.0])


def test_lu_roundtrip(rng):
    M = rng.standard_normal((50, 50)) + 10 * np.eye(50)
    x = rng.standard_normal(50)
    b = M @ x
    got = lu_solve(lu_factor(M), b)
    assert np.linalg.norm(got - x) <= 1e-9 * np.linalg.norm(x)
    assert np.max(np.abs(M @ got - b)) <= 1e-10 * np.max(np.abs(b))


def test_lu_errors():
    with pytest.raises(SingularMatrixError):
        lu_factor(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(ValueError):
        lu_factor(np.ones((2, 3)))


def test_spectral_radius_scaled_identity():
    est = spectral_radius_estimate(lambda v: 0.5 * v, 7)
    assert est.value == pytest.approx(0.5, abs=1e-9) and est.converged


def test_spectral_radius_diagonal():
    D = np.array([0.2, 0.9])
    assert spectral_radius_estimate(lambda v: D * v, 2).value == pytest.approx(0.9, abs=1e-6)


def test_spectral_radius_complex_pair():
    th = 0.7
    R = 1.1 * np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    assert spectral_radius_estimate(lambda v: R @ v, 2).value == pytest.approx(1.1, abs=1e-3)


def test_spectral_radius_against_eigvals(rng):
    M = rng.standard_normal((12, 12)) / 4
    ref = np.max(np.abs(np.linalg.eigvals(M)))
    est = spectral_radius_estimate(lambda v: M @ v, 12, max_iters=4000, tol=1e-9)
    assert est.value == pytest.approx(ref, rel=1e-3)


def test_spectral_radius_nilpotent():
    N = np.diag(np.ones(3), 1)
    assert spectral_radius_estimate(lambda v: N @ v, 4).value == 0.0
