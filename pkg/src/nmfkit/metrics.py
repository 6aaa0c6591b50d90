"""External clustering-quality metrics over a cluster/class contingency table.

All four metrics (mutual information in bits, normalized entropy, purity,
F-measure) are computed from the same ``Contingency`` tally and are invariant
under relabeling of clusters.  Entropy is reported in its nonnegative
"uncertainty" form on [0, 1], where 0 means every cluster is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Contingency",
    "contingency",
    "mutual_information",
    "entropy_metric",
    "purity",
    "fmeasure",
    "metrics_report",
]


@dataclass
class Contingency:
    """Cluster-by-class count table.

    ``counts[r, s]`` is the number of items placed in cluster ``r`` whose
    reference class is ``s``; row sums are the cluster sizes and the grand
    total is ``N``.
    """

    counts: np.ndarray
    cluster_sizes: np.ndarray
    class_sizes: np.ndarray
    N: int


def _as_label_array(labels, name):
    arr = np.asarray(getattr(labels, "labels", labels))
    if arr.ndim != 1:
        raise ValueError(f"{name}: expected a 1-d label vector")
    return arr


def contingency(result, reference) -> Contingency:
    """Tally cluster labels against reference classes.

    ``result`` is a label vector or any object with a ``labels`` attribute
    (e.g. a ``ClusteringResult``); when it also carries ``K``, empty
    clusters keep their rows.  Reference classes may be arbitrary hashable
    values; they are mapped to columns in sorted order.
    """
    labels = _as_label_array(result, "result")
    ref = np.asarray(reference)
    if labels.shape[0] != ref.shape[0]:
        raise ValueError(
            f"contingency: length mismatch ({labels.shape[0]} vs {ref.shape[0]})"
        )
    labels = labels.astype(np.intp)
    if labels.size == 0:
        raise ValueError("contingency: empty label vector")
    if labels.min() < 0:
        raise ValueError("contingency: negative cluster label")
    R = int(getattr(result, "K", labels.max() + 1))
    classes, ref_idx = np.unique(ref, return_inverse=True)
    S = classes.shape[0]
    counts = np.zeros((R, S), dtype=np.int64)
    np.add.at(counts, (labels, ref_idx), 1)
    return Contingency(
        counts=counts,
        cluster_sizes=counts.sum(axis=1),
        class_sizes=counts.sum(axis=0),
        N=int(counts.sum()),
    )


def mutual_information(t: Contingency) -> float:
    """Mutual information between clusters and classes, in bits.

    Zero cells contribute nothing (0 log 0 = 0); the value is nonnegative
    up to rounding and bounded by min(log2 R, log2 S).
    """
    if t.N <= 0:
        raise ValueError("mutual_information: empty contingency")
    n = float(t.N)
    mi = 0.0
    for r in range(t.counts.shape[0]):
        cr = t.cluster_sizes[r]
        if cr == 0:
            continue
        for s in range(t.counts.shape[1]):
            c = t.counts[r, s]
            if c == 0:
                continue
            p = c / n
            mi += p * np.log2(p * n * n / (cr * t.class_sizes[s]))
    return float(mi)


def entropy_metric(t: Contingency) -> float:
    """Average class uncertainty inside clusters, normalized to [0, 1].

    Needs at least two reference classes (the log2 S normalizer vanishes
    otherwise).  0 iff every cluster contains a single class.
    """
    if t.N <= 0:
        raise ValueError("entropy_metric: empty contingency")
    S = t.counts.shape[1]
    if S < 2:
        raise ValueError("entropy_metric: needs >= 2 classes")
    acc = 0.0
    for r in range(t.counts.shape[0]):
        cr = t.cluster_sizes[r]
        if cr == 0:
            continue
        for s in range(S):
            c = t.counts[r, s]
            if c:
                acc += c * np.log2(c / cr)
    return float(-acc / (t.N * np.log2(S)))


def purity(t: Contingency) -> float:
    """Fraction of items belonging to their cluster's dominant class."""
    if t.N <= 0:
        raise ValueError("purity: empty contingency")
    return float(t.counts.max(axis=1).sum() / t.N)


def fmeasure(t: Contingency, assignment=None) -> float:
    """Mean harmonic precision/recall over clusters.

    Each cluster is matched to a class -- by default its dominant class
    (lowest index on ties); pass ``assignment`` (sequence or dict mapping
    cluster index to class index) to override.  A cluster with zero overlap
    with its matched class contributes 0.
    """
    if t.N <= 0:
        raise ValueError("fmeasure: empty contingency")
    R = t.counts.shape[0]
    total = 0.0
    for r in range(R):
        s = int(np.argmax(t.counts[r])) if assignment is None else int(assignment[r])
        c = t.counts[r, s]
        cr = t.cluster_sizes[r]
        cs = t.class_sizes[s]
        prec = c / cr if cr else 0.0
        rec = c / cs if cs else 0.0
        total += 2.0 * prec * rec / (prec + rec) if prec + rec > 0 else 0.0
    return float(total / R)


def metrics_report(result, reference) -> dict:
    """All four metrics plus table shape as a JSON-ready dict."""
    t = contingency(result, reference)
    return {
        "mi": mutual_information(t),
        "entropy": entropy_metric(t),
        "purity": purity(t),
        "fmeasure": fmeasure(t),
        "R": int(t.counts.shape[0]),
        "S": int(t.counts.shape[1]),
        "N": t.N,
    }
