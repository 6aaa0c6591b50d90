"""Clustering pipelines: spectral, kernel-NMF, and document clustering.

Four pipelines share the same building blocks:

* ``njw_cluster`` -- Gaussian affinity, symmetric degree normalization,
  top-K eigenvectors, row normalization, k-means on the embedding rows.
* ``nmf_kernel_cluster`` -- the same affinity matrix factorized at rank K;
  item n goes to the row index maximizing column n of the coefficient
  factor.
* ``svd_doc_cluster`` -- column-normalized term-document matrix, top-K right
  singular vectors, k-means on their rows.
* ``nmf_doc_cluster`` -- column-normalized term-document matrix factorized
  at rank K, argmax over coefficient columns.

Every routine is deterministic given its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import degree_normalize, gaussian_affinity, xu_normalize
from .nmf import nmf_anls, nmf_multiplicative
from .svd import symmetric_top_eigs, truncated_svd
from .validation import check_matrix, check_points, to_dense

__all__ = [
    "ClusteringResult",
    "coefficient_labels",
    "PointSet2D",
    "kmeans",
    "lloyd_kmeans",
    "njw_cluster",
    "nmf_kernel_cluster",
    "svd_doc_cluster",
    "nmf_doc_cluster",
]

NMF_SOLVERS = ("mu", "anls")


def coefficient_labels(C) -> np.ndarray:
    """Cluster label of item n: argmax over column n of the coefficient
    factor, ties broken toward the lowest cluster index."""
    C = np.asarray(C, dtype=float)
    return np.argmax(C, axis=0).astype(np.intp)


@dataclass
class ClusteringResult:
    """Hard one-way clustering of N items into K clusters."""

    labels: np.ndarray
    K: int
    method: str
    seed: int

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.intp)
        if self.labels.size and not (0 <= self.labels.min() and self.labels.max() < self.K):
            raise ValueError("ClusteringResult: label outside [0, K)")


@dataclass
class PointSet2D:
    """Planar points with reference class labels (for the demos)."""

    coordinates: np.ndarray
    reference_labels: np.ndarray

    def __post_init__(self):
        self.coordinates = np.asarray(self.coordinates, dtype=float)
        self.reference_labels = np.asarray(self.reference_labels, dtype=np.intp)
        if self.coordinates.shape[0] != self.reference_labels.shape[0]:
            raise ValueError("PointSet2D: coordinate/label length mismatch")


def _plus_plus_init(X, K, rng):
    """k-means++ seeding: spread initial centers by squared distance."""
    centers = np.empty((K, X.shape[1]))
    centers[0] = X[rng.integers(X.shape[0])]
    d2 = np.sum((X - centers[0]) ** 2, axis=1)
    for k in range(1, K):
        total = d2.sum()
        if total <= 0:
            centers[k] = X[rng.integers(X.shape[0])]
        else:
            centers[k] = X[rng.choice(X.shape[0], p=d2 / total)]
        d2 = np.minimum(d2, np.sum((X - centers[k]) ** 2, axis=1))
    return centers


def _assign(X, centers):
    d2 = (
        np.sum(X * X, axis=1)[:, None]
        - 2.0 * X @ centers.T
        + np.sum(centers * centers, axis=1)[None, :]
    )
    np.maximum(d2, 0.0, out=d2)
    return np.argmin(d2, axis=1), d2


def lloyd_kmeans(X, K: int, seed: int = 0, restarts: int = 10, max_iter: int = 300):
    """Lloyd iterations with k-means++ seeding, best of ``restarts`` runs.

    Returns ``(labels, centers, inertia)`` of the run with the lowest
    within-cluster sum of squares.  An emptied cluster is re-seeded once per
    run at the point farthest from its assigned center; if a cluster still
    empties after that, the input had fewer distinct rows than K and a
    ValueError is raised.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("lloyd_kmeans: expected a 2-d row matrix")
    N = X.shape[0]
    if not 1 <= K <= N:
        raise ValueError(f"lloyd_kmeans: K={K} out of range [1, {N}]")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        centers = _plus_plus_init(X, K, rng)
        reseeded = False
        labels = np.zeros(N, dtype=np.intp)
        for _ in range(max_iter):
            labels, d2 = _assign(X, centers)
            new_centers = centers.copy()
            empty = []
            for k in range(K):
                members = labels == k
                if members.any():
                    new_centers[k] = X[members].mean(axis=0)
                else:
                    empty.append(k)
            if empty:
                if reseeded:
                    raise ValueError(
                        "lloyd_kmeans: empty cluster persists (fewer distinct rows than K?)"
                    )
                reseeded = True
                assigned = d2[np.arange(N), labels]
                for k in empty:
                    far = int(np.argmax(assigned))
                    new_centers[k] = X[far]
                    assigned[far] = -np.inf
                centers = new_centers
                continue
            if np.array_equal(new_centers, centers):
                break
            centers = new_centers
        labels, d2 = _assign(X, centers)
        inertia = float(d2[np.arange(N), labels].sum())
        if best is None or inertia < best[2] - 1e-12:
            best = (labels, centers, inertia)
    return best


def kmeans(rows, K: int, seed: int = 0, restarts: int = 10) -> ClusteringResult:
    """k-means over row vectors, packaged as a ClusteringResult."""
    labels, _, _ = lloyd_kmeans(rows, K, seed=seed, restarts=restarts)
    return ClusteringResult(labels=labels, K=K, method="kmeans", seed=seed)


def njw_cluster(points, K: int, alpha: float, seed: int = 0,
                restarts: int = 10) -> ClusteringResult:
    """Spectral clustering of a point set via the normalized affinity matrix.

    Raises on an isolated point (zero affinity degree).
    """
    P = points.coordinates if isinstance(points, PointSet2D) else check_points(points)
    A = gaussian_affinity(P, alpha)
    try:
        An = degree_normalize(A)
    except ValueError as exc:
        raise ValueError(f"njw_cluster: isolated point ({exc})") from exc
    _, V = symmetric_top_eigs(An, K)
    norms = np.linalg.norm(V, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0   # degenerate all-zero embedding row left as-is
    rows = V / norms
    labels, _, _ = lloyd_kmeans(rows, K, seed=seed, restarts=restarts)
    return ClusteringResult(labels=labels, K=K, method="njw", seed=seed)


def _run_nmf(A, K, solver, seed, max_iter, ridge):
    if solver == "mu":
        return nmf_multiplicative(A, K, init=seed, max_iter=max_iter)
    if solver == "anls":
        return nmf_anls(A, K, init=seed, max_iter=max_iter, ridge=ridge)
    raise ValueError(f"unknown NMF solver {solver!r}, expected one of {NMF_SOLVERS}")


def nmf_kernel_cluster(points, K: int, alpha: float, solver: str = "mu",
                       seed: int = 0, max_iter: int = 500,
                       ridge: float = 0.0) -> ClusteringResult:
    """Cluster a point set by factorizing its Gaussian affinity matrix.

    Uses the exact same affinity construction as ``njw_cluster``; item n is
    assigned to the argmax over column n of the coefficient factor, ties
    broken toward the lowest cluster index.
    """
    P = points.coordinates if isinstance(points, PointSet2D) else check_points(points)
    A = gaussian_affinity(P, alpha)
    if np.any(A.sum(axis=1) <= 0):
        raise ValueError("nmf_kernel_cluster: isolated point (zero affinity row)")
    pair = _run_nmf(A, K, solver, seed, max_iter, ridge)
    labels = coefficient_labels(pair.C)
    return ClusteringResult(labels=labels, K=K, method=f"nmf_kernel_{solver}", seed=seed)


def svd_doc_cluster(A, K: int, seed: int = 0, restarts: int = 10) -> ClusteringResult:
    """Document clustering from the top-K right singular vectors.

    ``A`` is a nonnegative term-by-document matrix with no zero column; the
    columns are degree-scaled, the top-K right singular vectors are taken,
    and k-means runs on their rows (one row per document).
    """
    A = check_matrix(A, "A", require_nonneg=True)
    An = xu_normalize(A)
    t = truncated_svd(to_dense(An), K, seed=seed)
    labels, _, _ = lloyd_kmeans(t.V, K, seed=seed, restarts=restarts)
    return ClusteringResult(labels=labels, K=K, method="svd_cocluster", seed=seed)


def nmf_doc_cluster(A, K: int, solver: str = "mu", seed: int = 0,
                    max_iter: int = 500, ridge: float = 0.0) -> ClusteringResult:
    """Document clustering by factorizing the column-normalized matrix."""
    A = check_matrix(A, "A", require_nonneg=True)
    An = to_dense(xu_normalize(A))
    pair = _run_nmf(An, K, solver, seed, max_iter, ridge)
    labels = coefficient_labels(pair.C)
    return ClusteringResult(labels=labels, K=K, method=f"nmf_doc_{solver}", seed=seed)
