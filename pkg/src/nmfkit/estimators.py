"""Scikit-learn style estimators wrapping the functional core.

The classes follow the usual conventions (constructor stores parameters
verbatim, ``fit`` validates and computes, fitted attributes carry a trailing
underscore) so they compose with pipelines, ``clone`` and grid search.
``X`` is oriented the way the underlying routines expect: factorization
estimators consume the raw (rows x columns) matrix, clustering estimators
consume one sample per row.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin

from .cluster import (
    lloyd_kmeans,
    njw_cluster,
    nmf_doc_cluster,
    nmf_kernel_cluster,
    svd_doc_cluster,
)
from .nmf import kkt_report, nmf_anls, nmf_multiplicative
from .nnls import nnls_multi
from .svd import low_rank_approx, truncated_svd
from .validation import check_matrix, to_dense

__all__ = [
    "NMF",
    "TruncatedSVD",
    "KMeans",
    "NJWSpectralClustering",
    "KernelNMFClustering",
    "SVDDocumentClustering",
    "NMFDocumentClustering",
]


class NMF(BaseEstimator, TransformerMixin):
    """Nonnegative factorization X ~ W @ components_ with W, components_ >= 0.

    ``solver="mu"`` uses multiplicative updates, ``solver="anls"`` exact
    alternating NNLS with a stationarity stop; ``ridge`` adds a Tikhonov
    penalty on both factors (ANLS only).
    """

    def __init__(self, n_components=2, solver="mu", max_iter=500, tol=1e-6,
                 kkt_tol=None, ridge=0.0, random_state=0):
        self.n_components = n_components
        self.solver = solver
        self.max_iter = max_iter
        self.tol = tol
        self.kkt_tol = kkt_tol
        self.ridge = ridge
        self.random_state = random_state

    def fit(self, X, y=None):
        self.fit_transform(X)
        return self

    def fit_transform(self, X, y=None):
        if self.solver == "mu":
            pair = nmf_multiplicative(X, self.n_components,
                                      init=self.random_state,
                                      max_iter=self.max_iter,
                                      stall_tol=self.tol)
        elif self.solver == "anls":
            pair = nmf_anls(X, self.n_components, init=self.random_state,
                            max_iter=self.max_iter, kkt_tol=self.kkt_tol,
                            ridge=self.ridge)
        else:
            raise ValueError(f"NMF: unknown solver {self.solver!r}")
        self.factor_pair_ = pair
        self.components_ = pair.C
        self.objective_trace_ = pair.objective_trace
        self.n_iter_ = pair.iterations
        self.stop_reason_ = pair.stop_reason
        self.reconstruction_err_ = pair.objective_trace[-1]
        return pair.B

    def transform(self, X):
        """Nonnegative coefficients of new rows against the fitted components."""
        X = to_dense(check_matrix(X, "X", require_nonneg=True))
        return nnls_multi(self.components_.T, X.T).T

    def inverse_transform(self, W):
        return np.asarray(W) @ self.components_

    def kkt_report(self, X):
        return kkt_report(X, self.factor_pair_)


class TruncatedSVD(BaseEstimator, TransformerMixin):
    """Top-K singular triplets; transform maps rows into the right basis."""

    def __init__(self, n_components=2, random_state=0):
        self.n_components = n_components
        self.random_state = random_state

    def fit(self, X, y=None):
        t = truncated_svd(X, self.n_components, seed=self.random_state)
        self.truncation_ = t
        self.components_ = t.V.T          # (K, n_columns)
        self.singular_values_ = t.S
        self.left_vectors_ = t.U
        return self

    def transform(self, X):
        return to_dense(X) @ self.components_.T

    def fit_transform(self, X, y=None):
        self.fit(X)
        return self.left_vectors_ * self.singular_values_

    def inverse_transform(self, Xt):
        return np.asarray(Xt) @ self.components_

    def reconstruction(self):
        return low_rank_approx(self.truncation_)


class KMeans(BaseEstimator, ClusterMixin):
    """Lloyd iterations with k-means++ seeding, best of ``n_init`` restarts."""

    def __init__(self, n_clusters=2, n_init=10, random_state=0):
        self.n_clusters = n_clusters
        self.n_init = n_init
        self.random_state = random_state

    def fit(self, X, y=None):
        labels, centers, inertia = lloyd_kmeans(
            X, self.n_clusters, seed=self.random_state, restarts=self.n_init)
        self.labels_ = labels
        self.cluster_centers_ = centers
        self.inertia_ = inertia
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        d2 = (np.sum(X * X, axis=1)[:, None]
              - 2.0 * X @ self.cluster_centers_.T
              + np.sum(self.cluster_centers_ ** 2, axis=1)[None, :])
        return np.argmin(d2, axis=1)


class _LabelEstimator(BaseEstimator, ClusterMixin):
    def fit_predict(self, X, y=None):
        return self.fit(X).labels_


class NJWSpectralClustering(_LabelEstimator):
    """Normalized-affinity spectral clustering of a point set."""

    def __init__(self, n_clusters=2, alpha=0.3, n_init=10, random_state=0):
        self.n_clusters = n_clusters
        self.alpha = alpha
        self.n_init = n_init
        self.random_state = random_state

    def fit(self, X, y=None):
        res = njw_cluster(X, self.n_clusters, self.alpha,
                          seed=self.random_state, restarts=self.n_init)
        self.labels_ = res.labels
        self.result_ = res
        return self


class KernelNMFClustering(_LabelEstimator):
    """Clustering by factorizing the Gaussian affinity matrix."""

    def __init__(self, n_clusters=2, alpha=0.3, solver="mu", max_iter=500,
                 ridge=0.0, random_state=0):
        self.n_clusters = n_clusters
        self.alpha = alpha
        self.solver = solver
        self.max_iter = max_iter
        self.ridge = ridge
        self.random_state = random_state

    def fit(self, X, y=None):
        res = nmf_kernel_cluster(X, self.n_clusters, self.alpha,
                                 solver=self.solver, seed=self.random_state,
                                 max_iter=self.max_iter, ridge=self.ridge)
        self.labels_ = res.labels
        self.result_ = res
        return self


class SVDDocumentClustering(_LabelEstimator):
    """Cluster the columns of a term-document matrix via singular vectors."""

    def __init__(self, n_clusters=2, n_init=10, random_state=0):
        self.n_clusters = n_clusters
        self.n_init = n_init
        self.random_state = random_state

    def fit(self, X, y=None):
        res = svd_doc_cluster(X, self.n_clusters, seed=self.random_state,
                              restarts=self.n_init)
        self.labels_ = res.labels
        self.result_ = res
        return self


class NMFDocumentClustering(_LabelEstimator):
    """Cluster the columns of a term-document matrix via NMF coefficients."""

    def __init__(self, n_clusters=2, solver="mu", max_iter=500, ridge=0.0,
                 random_state=0):
        self.n_clusters = n_clusters
        self.solver = solver
        self.max_iter = max_iter
        self.ridge = ridge
        self.random_state = random_state

    def fit(self, X, y=None):
        res = nmf_doc_cluster(X, self.n_clusters, solver=self.solver,
                              seed=self.random_state, max_iter=self.max_iter,
                              ridge=self.ridge)
        self.labels_ = res.labels
        self.result_ = res
        return self
