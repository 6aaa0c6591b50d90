"""Dense/sparse matrix kernels used throughout the toolkit.

Everything here is a pure function over immutable inputs; dense and sparse
execution paths agree elementwise to ~1e-12 on well-scaled data.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .validation import check_matrix, check_points, check_positive, is_sparse, to_dense

__all__ = [
    "matmul",
    "frobenius_norm_sq",
    "pairwise_sq_dists",
    "gaussian_affinity",
    "degree_normalize",
    "xu_normalize",
]


def matmul(X, Y):
    """Matrix product with an explicit dimension check.

    Accepts any mix of dense arrays and sparse matrices; sparse times sparse
    stays sparse, mixed products come back dense.
    """
    if X.shape[1] != Y.shape[0]:
        raise ValueError(
            f"matmul: inner dimensions differ, {X.shape} x {Y.shape}"
        )
    out = X @ Y
    if is_sparse(out) and not (is_sparse(X) and is_sparse(Y)):
        out = to_dense(out)
    elif isinstance(out, np.matrix):
        out = np.asarray(out)
    return out


def frobenius_norm_sq(X) -> float:
    """Sum of squared entries, equal to trace(X^T X)."""
    if is_sparse(X):
        return float(X.multiply(X).sum())
    X = np.asarray(X, dtype=np.float64)
    return float(np.sum(X * X))


def pairwise_sq_dists(points: np.ndarray) -> np.ndarray:
    """Symmetric matrix of squared Euclidean distances between rows."""
    P = np.asarray(points, dtype=np.float64)
    sq = np.sum(P * P, axis=1)
    D = sq[:, None] + sq[None, :] - 2.0 * (P @ P.T)
    np.maximum(D, 0.0, out=D)
    # exact zeros on the diagonal regardless of rounding
    np.fill_diagonal(D, 0.0)
    return 0.5 * (D + D.T)


def gaussian_affinity(points, alpha: float) -> np.ndarray:
    """Gaussian-kernel affinity matrix over a point set.

    Off-diagonal entries are exp(-||x_i - x_j||^2 / (2 alpha^2)); the
    diagonal is forced to zero so a point carries no self-affinity.

    Parameters
    ----------
    points : array-like of shape (N, d)
        At least two coordinate rows.
    alpha : float
        Kernel width, must be positive.
    """
    P = check_points(points)
    alpha = check_positive(alpha, "alpha")
    A = np.exp(-pairwise_sq_dists(P) / (2.0 * alpha * alpha))
    np.fill_diagonal(A, 0.0)
    return 0.5 * (A + A.T)


def degree_normalize(A):
    """Symmetric degree normalization D^{-1/2} A D^{-1/2}.

    ``A`` must be square, symmetric and nonnegative with no all-zero row
    (a zero degree makes the scaling singular).
    """
    A = check_matrix(A, "A", require_nonneg=True, require_square=True)
    if is_sparse(A):
        d = np.asarray(A.sum(axis=1)).ravel()
    else:
        sym_err = np.max(np.abs(A - A.T)) if A.size else 0.0
        if sym_err > 1e-12 * (1.0 + np.max(np.abs(A))):
            raise ValueError("degree_normalize: matrix is not symmetric")
        d = A.sum(axis=1)
    if np.any(d <= 0):
        raise ValueError("degree_normalize: zero row (singular degree matrix)")
    inv_sqrt = 1.0 / np.sqrt(d)
    if is_sparse(A):
        D = sp.diags(inv_sqrt)
        out = sp.csc_matrix(D @ A @ D)
        return out
    out = A * inv_sqrt[:, None] * inv_sqrt[None, :]
    return 0.5 * (out + out.T)


def xu_normalize(A):
    """Column scaling A D^{-1/2} with D = diag(A^T A e).

    Nonnegative input with no all-zero column required; column n is scaled
    by the inverse square root of the n-th entry of A^T (A e).
    """
    A = check_matrix(A, "A", require_nonneg=True)
    ones = np.ones(A.shape[1])
    if is_sparse(A):
        row_sums = np.asarray(A @ ones).ravel()
        d = np.asarray(A.T @ row_sums).ravel()
    else:
        row_sums = A @ ones
        d = A.T @ row_sums
    if np.any(d <= 0):
        raise ValueError("xu_normalize: zero column")
    scale = 1.0 / np.sqrt(d)
    if is_sparse(A):
        return sp.csc_matrix(A @ sp.diags(scale))
    return A * scale[None, :]
