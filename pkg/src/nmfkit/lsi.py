"""Query scoring against low-rank approximations and retrieval evaluation.

Scores are plain inner products ``Q @ A_hat``; the evaluation metric is
I-point interpolated average precision built from pseudo-precision at
evenly spaced recall levels.  Ranking ties are broken by ascending document
index, so every run is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .nmf import nmf_anls, nmf_multiplicative
from .svd import low_rank_approx, truncated_svd
from .validation import check_matrix, to_dense

__all__ = [
    "QuerySet",
    "RelevanceJudgments",
    "RetrievalRun",
    "score_queries",
    "precision_at",
    "pseudo_precision",
    "average_precision",
    "evaluate_run",
    "rank_sweep",
]

SWEEP_METHODS = ("svd", "nmf_mu", "nmf_anls")


@dataclass
class QuerySet:
    """Query vectors as rows over the collection vocabulary."""

    Q: np.ndarray
    query_ids: list

    def __post_init__(self):
        self.Q = np.asarray(self.Q, dtype=float)
        if self.Q.ndim != 2 or self.Q.shape[0] != len(self.query_ids):
            raise ValueError("QuerySet: Q must have one row per query id")
        if self.Q.size and self.Q.min() < 0:
            raise ValueError("QuerySet: query vectors must be nonnegative")


@dataclass
class RelevanceJudgments:
    """query_id -> set of relevant doc_ids; doc ids validated on evaluation."""

    relevant: dict

    def for_query(self, qid) -> set:
        return set(self.relevant.get(qid, ()))


@dataclass
class RetrievalRun:
    """Per-query rankings and average precision plus the run mean."""

    query_ids: list
    rankings: list                  # each a permutation of doc indices
    scores: np.ndarray
    ap: dict
    mean_ap: float
    skipped_queries: list = field(default_factory=list)


def score_queries(qs: QuerySet, A_hat) -> np.ndarray:
    """Document scores ``Q @ A_hat`` (no thresholding)."""
    A_hat = to_dense(check_matrix(A_hat, "A_hat"))
    if qs.Q.shape[1] != A_hat.shape[0]:
        raise ValueError(
            f"score_queries: query dimension {qs.Q.shape[1]} != term count {A_hat.shape[0]}"
        )
    return qs.Q @ A_hat


def precision_at(ranked_relevance, n: int) -> float:
    """Fraction of relevant documents among the top n of a ranked list."""
    rel = np.asarray(ranked_relevance, dtype=bool)
    if not 1 <= n <= rel.shape[0]:
        raise ValueError(f"precision_at: n={n} out of range [1, {rel.shape[0]}]")
    return float(np.count_nonzero(rel[:n]) / n)


def pseudo_precision(ranked_relevance, x: float) -> float:
    """Best precision at or beyond recall level ``x`` in a ranked list.

    ``max over n of (relevant in top n)/n`` restricted to cut-offs n whose
    recall ``r_n / r_N`` reaches ``x``.  Undefined (raises) when the list
    contains no relevant document.
    """
    rel = np.asarray(ranked_relevance, dtype=bool)
    r_total = int(np.count_nonzero(rel))
    if r_total == 0:
        raise ValueError("pseudo_precision: no relevant document in the ranking")
    cum = np.cumsum(rel)
    n = np.arange(1, rel.shape[0] + 1)
    ok = cum / r_total >= x
    return float(np.max(cum[ok] / n[ok]))


def average_precision(ranked_relevance, I: int = 11) -> float:
    """Mean pseudo-precision over I evenly spaced recall levels in [0, 1]."""
    if I < 2:
        raise ValueError("average_precision: I must be >= 2")
    levels = [i / (I - 1) for i in range(I)]
    return float(np.mean([pseudo_precision(ranked_relevance, x) for x in levels]))


def _ranked_indices(scores_row):
    # descending score, ties by ascending doc index (stable sort)
    return np.argsort(-scores_row, kind="stable")


def evaluate_run(qs: QuerySet, judgments: RelevanceJudgments, A_hat,
                 doc_ids=None, I: int = 11) -> RetrievalRun:
    """Score, rank and evaluate every query against ``A_hat``.

    ``doc_ids`` maps ranking positions to judged document ids (defaults to
    the column index).  Queries without a single judged relevant document in
    the collection are skipped and listed in ``skipped_queries``; the mean
    is taken over the evaluated queries.
    """
    S = score_queries(qs, A_hat)
    n_docs = S.shape[1]
    ids = list(doc_ids) if doc_ids is not None else list(range(n_docs))
    if len(ids) != n_docs:
        raise ValueError("evaluate_run: doc_ids length does not match matrix")
    known = set(ids)
    rankings, ap, skipped = [], {}, []
    for r, qid in enumerate(qs.query_ids):
        relevant = judgments.for_query(qid)
        unknown = relevant - known
        if unknown:
            raise ValueError(f"evaluate_run: judgments for {qid!r} reference "
                             f"unknown documents {sorted(unknown)!r}")
        order = _ranked_indices(S[r])
        rankings.append(order)
        if not relevant:
            skipped.append(qid)
            continue
        rel = [ids[j] in relevant for j in order]
        ap[qid] = average_precision(rel, I)
    mean = float(np.mean(list(ap.values()))) if ap else float("nan")
    return RetrievalRun(query_ids=list(qs.query_ids), rankings=rankings,
                        scores=S, ap=ap, mean_ap=mean, skipped_queries=skipped)


def _approx_at_rank(A, method, rank, seed, trial, ridge):
    if method == "svd":
        return low_rank_approx(truncated_svd(A, rank, seed=seed))
    if method == "nmf_mu":
        return nmf_multiplicative(A, rank, init=seed + trial).product
    if method == "nmf_anls":
        return nmf_anls(A, rank, init=seed + trial, ridge=ridge).product
    raise ValueError(f"unknown method {method!r}, expected one of {SWEEP_METHODS}")


def rank_sweep(A, qs: QuerySet, judgments: RelevanceJudgments, method: str,
               ranks, trials: int = 10, seed: int = 0, doc_ids=None,
               I: int = 11, ridge: float = 0.0) -> list:
    """Mean average precision per (rank, trial) over a list of ranks.

    The factorization-free method (``svd``) is deterministic, so it runs a
    single trial per rank; the factorization methods run ``trials`` seeded
    repetitions (seed + trial index).  Returns rows of
    ``(rank, trial, mean_ap)`` in deterministic order.
    """
    A = to_dense(check_matrix(A, "A"))
    max_rank = min(A.shape)
    ranks = [int(r) for r in ranks]
    if not ranks:
        raise ValueError("rank_sweep: empty rank list")
    if any(not 1 <= r <= max_rank for r in ranks):
        raise ValueError(f"rank_sweep: ranks must lie in [1, {max_rank}]")
    if method not in SWEEP_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {SWEEP_METHODS}")
    n_trials = 1 if method == "svd" else max(1, int(trials))
    rows = []
    for rank in ranks:
        for trial in range(n_trials):
            A_hat = _approx_at_rank(A, method, rank, seed, trial, ridge)
            run = evaluate_run(qs, judgments, A_hat, doc_ids=doc_ids, I=I)
            rows.append((rank, trial, run.mean_ap))
    return rows
