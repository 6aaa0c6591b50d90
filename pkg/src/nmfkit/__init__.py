"""nmfkit: matrix factorization, clustering and retrieval evaluation.

Functional core plus scikit-learn style estimators for nonnegative matrix
factorization (multiplicative updates and alternating exact NNLS), truncated
SVD, spectral and factorization-based clustering, clustering-quality
metrics, text preprocessing, and interpolated-average-precision retrieval
evaluation.
"""

from .cluster import (
    ClusteringResult,
    PointSet2D,
    kmeans,
    njw_cluster,
    nmf_doc_cluster,
    nmf_kernel_cluster,
    svd_doc_cluster,
)
from .estimators import (
    KMeans,
    KernelNMFClustering,
    NJWSpectralClustering,
    NMF,
    NMFDocumentClustering,
    SVDDocumentClustering,
    TruncatedSVD,
)
from .linalg import (
    degree_normalize,
    frobenius_norm_sq,
    gaussian_affinity,
    matmul,
    xu_normalize,
)
from .lsi import (
    QuerySet,
    RelevanceJudgments,
    RetrievalRun,
    average_precision,
    evaluate_run,
    precision_at,
    pseudo_precision,
    rank_sweep,
    score_queries,
)
from .metrics import (
    Contingency,
    contingency,
    entropy_metric,
    fmeasure,
    metrics_report,
    mutual_information,
    purity,
)
from .nmf import FactorPair, KktReport, kkt_report, nmf_anls, nmf_multiplicative
from .nnls import NnlsSolution, nnls_multi, nnls_solve
from .svd import (
    SvdTruncation,
    kyfan_value,
    low_rank_approx,
    symmetric_top_eigs,
    truncated_svd,
)
from .textprep import (
    CLUSTERING_OPTIONS,
    LSI_OPTIONS,
    Corpus,
    TermDocMatrix,
    build_matrix,
    build_query_matrix,
    porter_stem,
    remove_stopwords,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "ClusteringResult", "PointSet2D", "kmeans", "njw_cluster",
    "nmf_doc_cluster", "nmf_kernel_cluster", "svd_doc_cluster",
    "KMeans", "KernelNMFClustering", "NJWSpectralClustering", "NMF",
    "NMFDocumentClustering", "SVDDocumentClustering", "TruncatedSVD",
    "degree_normalize", "frobenius_norm_sq", "gaussian_affinity", "matmul",
    "xu_normalize",
    "QuerySet", "RelevanceJudgments", "RetrievalRun", "average_precision",
    "evaluate_run", "precision_at", "pseudo_precision", "rank_sweep",
    "score_queries",
    "Contingency", "contingency", "entropy_metric", "fmeasure",
    "metrics_report", "mutual_information", "purity",
    "FactorPair", "KktReport", "kkt_report", "nmf_anls", "nmf_multiplicative",
    "NnlsSolution", "nnls_multi", "nnls_solve",
    "SvdTruncation", "kyfan_value", "low_rank_approx", "symmetric_top_eigs",
    "truncated_svd",
    "CLUSTERING_OPTIONS", "LSI_OPTIONS", "Corpus", "TermDocMatrix",
    "build_matrix", "build_query_matrix", "porter_stem", "remove_stopwords",
    "tokenize",
    "__version__",
]
