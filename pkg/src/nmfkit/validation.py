"""Input validation helpers shared by every estimator and function.

Matrices are either dense float64 ``numpy.ndarray`` or ``scipy.sparse``
column-compressed (CSC) matrices.  Validation canonicalizes sparse inputs
(sorted indices, no explicit zeros) so downstream kernels can rely on the
storage invariants.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def is_sparse(X) -> bool:
    return sp.issparse(X)


def to_dense(X) -> np.ndarray:
    """Return a dense float64 view/copy of a dense or sparse matrix."""
    if sp.issparse(X):
        return np.asarray(X.todense(), dtype=np.float64)
    return np.asarray(X, dtype=np.float64)


def check_matrix(X, name="X", *, require_nonneg=False, require_square=False,
                 allow_sparse=True):
    """Validate a 2-d matrix and return it in canonical form.

    Dense inputs come back as C-contiguous float64 arrays; sparse inputs as
    CSC with sorted indices, duplicates summed and explicit zeros dropped.

    Raises
    ------
    ValueError
        On wrong dimensionality, non-finite entries, negative entries when
        ``require_nonneg`` is set, or a non-square matrix when
        ``require_square`` is set.
    """
    if sp.issparse(X):
        if not allow_sparse:
            raise ValueError(f"{name}: sparse input not supported here")
        X = sp.csc_matrix(X, dtype=np.float64)
        X.sum_duplicates()
        X.eliminate_zeros()
        X.sort_indices()
        data = X.data
    else:
        X = np.ascontiguousarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError(f"{name}: expected a 2-d matrix, got ndim={X.ndim}")
        data = X
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{name}: non-finite entries")
    if require_nonneg and data.size and data.min() < 0:
        raise ValueError(f"{name}: negative entries not allowed")
    if require_square and X.shape[0] != X.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {X.shape}")
    return X


def check_vector(b, name="b", *, length=None) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64).ravel()
    if not np.all(np.isfinite(b)):
        raise ValueError(f"{name}: non-finite entries")
    if length is not None and b.shape[0] != length:
        raise ValueError(f"{name}: expected length {length}, got {b.shape[0]}")
    return b


def check_rank(K, M, N, name="K") -> int:
    K = int(K)
    if not 1 <= K <= min(M, N):
        raise ValueError(f"{name}={K} out of range [1, {min(M, N)}]")
    return K


def check_positive(x, name) -> float:
    x = float(x)
    if not x > 0:
        raise ValueError(f"{name} must be > 0, got {x}")
    return x


def check_points(points, name="points") -> np.ndarray:
    """Coerce a point list to an (N, d) float64 array with N >= 2."""
    P = np.asarray(points, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] < 2:
        raise ValueError(f"{name}: expected >= 2 points as an (N, d) array")
    if not np.all(np.isfinite(P)):
        raise ValueError(f"{name}: non-finite coordinates")
    return P
