import numpy as np
import pytest
import scipy.sparse as sp

from nmfkit.linalg import (
    degree_normalize,
    frobenius_norm_sq,
    gaussian_affinity,
    matmul,
    xu_normalize,
)


class TestMatmul:
    def test_identity(self):
        X = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_array_equal(matmul(np.eye(2), X), X)

    def test_row_times_column(self):
        out = matmul(np.array([[1.0, 1.0]]), np.array([[1.0], [1.0]]))
        np.testing.assert_array_equal(out, [[2.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matmul(np.ones((2, 3)), np.ones((2, 2)))

    def test_sparse_path_matches_dense(self):
        rng = np.random.default_rng(0)
        X = rng.random((3, 4))
        Y = rng.random((4, 2))
        dense = matmul(X, Y)   # dense path is the oracle
        np.testing.assert_allclose(matmul(sp.csc_matrix(X), Y), dense, atol=1e-12)
        np.testing.assert_allclose(
            matmul(sp.csc_matrix(X.T).T, Y), dense, atol=1e-12)

    def test_sparse_dense_agreement_20x20(self):
        rng = np.random.default_rng(1)
        X = rng.random((20, 20)) * (rng.random((20, 20)) < 0.3)
        Y = rng.random((20, 20))
        np.testing.assert_allclose(
            matmul(sp.csc_matrix(X), sp.csc_matrix(Y)).toarray(),
            matmul(X, Y), atol=1e-12)


class TestFrobenius:
    def test_zero(self):
        assert frobenius_norm_sq(np.zeros((3, 2))) == 0.0

    def test_three_four(self):
        assert frobenius_norm_sq(np.array([[3.0, 4.0]])) == 25.0

    def test_trace_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            X = rng.normal(size=(4, 4))
            fro = frobenius_norm_sq(X)
            assert abs(fro - np.trace(X.T @ X)) <= 1e-10 * (1.0 + fro)

    def test_sparse_matches_dense(self):
        rng = np.random.default_rng(3)
        X = rng.random((20, 20)) * (rng.random((20, 20)) < 0.4)
        assert abs(frobenius_norm_sq(sp.csc_matrix(X)) - frobenius_norm_sq(X)) < 1e-12


class TestGaussianAffinity:
    def test_identical_points(self):
        A = gaussian_affinity([[1.0, 2.0], [1.0, 2.0]], alpha=0.7)
        assert A[0, 1] == 1.0 and A[1, 0] == 1.0
        assert A[0, 0] == 0.0 and A[1, 1] == 0.0

    def test_known_distance(self):
        # points at distance alpha*sqrt(2): exponent is -1
        alpha = 0.5
        A = gaussian_affinity([[0.0, 0.0], [0.0, alpha * np.sqrt(2.0)]], alpha)
        np.testing.assert_allclose(A[0, 1], np.exp(-1.0), rtol=1e-12)

    def test_symmetric_and_bounded(self):
        rng = np.random.default_rng(4)
        P = rng.normal(size=(15, 2))
        A = gaussian_affinity(P, 0.3)
        np.testing.assert_array_equal(A, A.T)
        assert A.min() >= 0.0 and A.max() <= 1.0

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            gaussian_affinity([[0.0, 0.0], [1.0, 1.0]], alpha=0.0)
        with pytest.raises(ValueError):
            gaussian_affinity([[0.0, 0.0], [1.0, 1.0]], alpha=-1.0)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            gaussian_affinity([[0.0, 0.0]], alpha=1.0)


class TestDegreeNormalize:
    def test_unit_degrees_unchanged(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(degree_normalize(A), A)

    def test_hand_case(self):
        # degrees are (2, 2), so every entry is scaled by 1/2
        A = np.array([[0.0, 2.0], [2.0, 0.0]])
        np.testing.assert_allclose(degree_normalize(A), [[0.0, 1.0], [1.0, 0.0]])

    def test_zero_row_raises(self):
        A = np.array([[1.0, 0.0], [0.0, 0.0]])
        with pytest.raises(ValueError):
            degree_normalize(A)

    def test_idempotent_on_unit_degree_matrix(self):
        # constant row sums of 1: the degree matrix is the identity
        A = np.full((4, 4), 0.25)
        once = degree_normalize(A)
        twice = degree_normalize(once)
        np.testing.assert_allclose(twice, once, atol=1e-12)

    def test_sparse_matches_dense(self):
        rng = np.random.default_rng(5)
        M = rng.random((20, 20))
        A = M + M.T
        np.testing.assert_allclose(
            degree_normalize(sp.csc_matrix(A)).toarray(),
            degree_normalize(A), atol=1e-12)


class TestXuNormalize:
    def test_single_column(self):
        # A^T A e = 25, so the column is scaled by 1/5
        A = np.array([[3.0], [4.0]])
        np.testing.assert_allclose(xu_normalize(A), [[0.6], [0.8]])

    def test_identity_unchanged(self):
        A = np.eye(3)
        np.testing.assert_allclose(xu_normalize(A), A)

    def test_zero_column_raises(self):
        with pytest.raises(ValueError):
            xu_normalize(np.array([[1.0, 0.0], [1.0, 0.0]]))

    def test_finite_output(self):
        rng = np.random.default_rng(6)
        A = rng.random((10, 7)) + 0.01
        out = xu_normalize(A)
        assert np.all(np.isfinite(out))

    def test_sparse_matches_dense(self):
        rng = np.random.default_rng(7)
        A = rng.random((20, 20)) * (rng.random((20, 20)) < 0.5) + np.eye(20)
        np.testing.assert_allclose(
            xu_normalize(sp.csc_matrix(A)).toarray(), xu_normalize(A), atol=1e-12)
