"""Bundled demo data: synthetic point sets, two worked examples, a labeled corpus.

The two worked examples are tiny term-by-document matrices whose low-rank
behavior is fully understood:

* the *synonymy* collection, where related terms never co-occur in a query's
  target documents but are chained through shared documents, and
* the *polysemy* collection, where one term (``bank``) spans two unrelated
  topics.

Reference reconstructions and query-score vectors for both collections are
embedded as printed strings; ``parse_reference`` turns them into values plus
per-entry tolerances at the precision they were printed with (one unit of
the last printed digit, floored at ``floor``; entries printed as ``-eps`` or
``0`` denote magnitudes below ``eps_tol``).
"""

from __future__ import annotations

import numpy as np

from .cluster import PointSet2D

__all__ = [
    "make_rings",
    "make_moons",
    "make_blobs",
    "synonymy_example",
    "polysemy_example",
    "parse_reference",
    "make_clustering_corpus",
]


# ---------------------------------------------------------------------------
# synthetic 2-d point sets


def make_rings(n_per_ring: int, radii, noise_sd: float = 0.0,
               seed: int = 0) -> PointSet2D:
    """Concentric noisy rings; reference label = ring index.

    Angles are uniform per ring and the radius gets additive Gaussian noise
    with standard deviation ``noise_sd``.
    """
    radii = [float(r) for r in radii]
    if len(set(radii)) != len(radii) or any(r <= 0 for r in radii):
        raise ValueError("make_rings: radii must be distinct and positive")
    if noise_sd < 0:
        raise ValueError("make_rings: noise_sd must be >= 0")
    rng = np.random.default_rng(seed)
    pts, labels = [], []
    for k, r in enumerate(radii):
        theta = rng.uniform(0.0, 2.0 * np.pi, n_per_ring)
        rr = r + rng.normal(0.0, noise_sd, n_per_ring) if noise_sd else np.full(n_per_ring, r)
        pts.append(np.column_stack([rr * np.cos(theta), rr * np.sin(theta)]))
        labels.append(np.full(n_per_ring, k, dtype=np.intp))
    return PointSet2D(np.vstack(pts), np.concatenate(labels))


def make_moons(n_per_moon: int, noise_sd: float = 0.0, seed: int = 0) -> PointSet2D:
    """Two interleaved half-circles."""
    rng = np.random.default_rng(seed)
    t1 = rng.uniform(0.0, np.pi, n_per_moon)
    t2 = rng.uniform(0.0, np.pi, n_per_moon)
    upper = np.column_stack([np.cos(t1), np.sin(t1)])
    lower = np.column_stack([1.0 - np.cos(t2), 0.5 - np.sin(t2)])
    pts = np.vstack([upper, lower])
    if noise_sd:
        pts = pts + rng.normal(0.0, noise_sd, pts.shape)
    labels = np.concatenate([np.zeros(n_per_moon, dtype=np.intp),
                             np.ones(n_per_moon, dtype=np.intp)])
    return PointSet2D(pts, labels)


def make_blobs(n_per_blob: int, centers, sd: float = 0.1, seed: int = 0) -> PointSet2D:
    """Isotropic Gaussian blobs around the given centers."""
    centers = np.asarray(centers, dtype=float)
    rng = np.random.default_rng(seed)
    pts, labels = [], []
    for k, c in enumerate(centers):
        pts.append(c + rng.normal(0.0, sd, (n_per_blob, centers.shape[1])))
        labels.append(np.full(n_per_blob, k, dtype=np.intp))
    return PointSet2D(np.vstack(pts), np.concatenate(labels))


# ---------------------------------------------------------------------------
# worked examples with embedded reference values

SYNONYMY_TERMS = ("mark", "twain", "samuel", "clemens", "purple", "colour")
SYNONYMY_DOC_IDS = ("Doc1", "Doc2", "Doc3", "Doc4", "Doc5")
SYNONYMY_COUNTS = np.array([
    [15, 0, 0, 0, 0],
    [15, 0, 20, 0, 0],
    [0, 10, 5, 0, 0],
    [0, 20, 10, 0, 0],
    [0, 0, 0, 20, 10],
    [0, 0, 0, 15, 0],
], dtype=float)

# reference rank-2 reconstructions as printed-precision strings
SYNONYMY_SVD_REFERENCE = (
    ("3.7", "3.5", "5.5", "-eps", "-eps"),
    ("11", "10", "16", "-eps", "-eps"),
    ("4.1", "3.9", "6.1", "-eps", "-eps"),
    ("8.3", "7.8", "12", "-eps", "-eps"),
    ("-eps", "-eps", "-eps", "21", "7.1"),
    ("-eps", "-eps", "-eps", "13", "4.5"),
)
SYNONYMY_MU_REFERENCE = (
    ("3.72", "3.50", "5.45", "0", "0"),
    ("11.0", "10.4", "16.2", "0", "0"),
    ("4.15", "3.90", "6.08", "0", "0"),
    ("8.29", "7.79", "12.1", "0", "0"),
    ("0", "0", "0", "21.0", "7.08"),
    ("0", "0", "0", "13.5", "4.55"),
)
SYNONYMY_ANLS_REFERENCE = (
    ("3.14", "2.95", "4.60", "0", "0"),
    ("9.27", "8.71", "13.6", "0", "0"),
    ("3.50", "3.29", "5.13", "0", "0"),
    ("7.00", "6.58", "10.3", "0", "0"),
    ("0", "0", "0", "17.3", "5.83"),
    ("0", "0", "0", "11.1", "3.74"),
)

POLYSEMY_TERMS = ("money", "bed", "river", "bank", "interest")
POLYSEMY_DOC_IDS = ("Doc1", "Doc2", "Doc3", "Doc4", "Doc5", "Doc6")
POLYSEMY_COUNTS = np.array([
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 0],
    [1, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 1, 0],
], dtype=float)

POLYSEMY_SVD_REFERENCE = (
    ("0.80882", "-0.054983", "0.80882", "-0.054983", "0.547139", "0.062068"),
    ("-0.023949", "1.08239", "-0.023949", "1.08239", "0.117052", "0.738319"),
    ("-0.054983", "0.80882", "-0.054983", "0.80882", "0.062068", "0.547139"),
    ("1.05844", "1.05844", "1.05844", "1.05844", "0.855371", "0.855371"),
    ("1.08239", "-0.023949", "1.08239", "-0.023949", "0.738319", "0.117052"),
)
POLYSEMY_MU_REFERENCE = (
    ("0.801054", "0.013549", "0.800924", "0.013018", "0.558518", "0.082122"),
    ("0.013619", "1.082496", "0.014032", "1.082806", "0.098272", "0.748645"),
    ("0.010063", "0.804439", "0.01037", "0.80467", "0.072989", "0.556338"),
    ("1.067149", "1.063328", "1.067377", "1.062928", "0.829791", "0.831112"),
    ("1.080788", "0.018281", "1.080612", "0.017564", "0.753557", "0.110799"),
)
POLYSEMY_ANLS_REFERENCE = (
    ("0.63733", "0.040462", "0.63733", "0.040462", "0.441459", "0.098975"),
    ("0.054469", "0.858063", "0.054469", "0.858063", "0.133246", "0.594351"),
    ("0.040458", "0.637333", "0.040458", "0.637333", "0.09897", "0.441459"),
    ("0.877087", "0.877088", "0.877087", "0.877088", "0.699338", "0.699339"),
    ("0.85806", "0.054476", "0.85806", "0.054476", "0.594352", "0.133253"),
)

# in-text reference score vectors for the polysemy queries
POLYSEMY_Q1 = np.array([1, 0, 0, 1, 0], dtype=float)   # {money, bank}
POLYSEMY_Q2 = np.array([0, 0, 1, 1, 0], dtype=float)   # {river, bank}
POLYSEMY_Q1_RELEVANT = (0, 2, 4)
POLYSEMY_Q2_RELEVANT = (1, 3, 5)
POLYSEMY_SVD_Q1 = ("1.86726", "1.00346", "1.86726", "1.00346", "1.40251", "0.91744")
POLYSEMY_SVD_Q2 = ("1.00346", "1.86726", "1.00346", "1.86726", "0.91744", "1.40251")
POLYSEMY_MU_Q1 = ("1.8682", "1.07688", "1.8683", "1.07595", "1.38831", "0.91323")
POLYSEMY_MU_Q2 = ("1.07721", "1.86777", "1.07775", "1.8676", "0.90278", "1.38745")
POLYSEMY_ANLS_Q1 = ("1.51442", "0.91755", "1.51442", "0.91755", "1.1408", "0.79831")
POLYSEMY_ANLS_Q2 = ("0.91754", "1.51442", "0.91754", "1.51442", "0.79831", "1.1408")

SYNONYMY_Q_AUTHOR = np.array([1, 1, 0, 0, 0, 0], dtype=float)   # {mark, twain}
SYNONYMY_Q_AUTHOR_RAW_SCORES = np.array([30.0, 0.0, 20.0, 0.0, 0.0])
SYNONYMY_Q_AUTHOR_RELEVANT = (0, 1, 2)
SYNONYMY_Q_COLOUR = np.array([0, 0, 0, 0, 0, 1], dtype=float)   # {colour}
SYNONYMY_Q_COLOUR_RELEVANT = (3, 4)


def synonymy_example() -> dict:
    """Term-document counts and reference values of the synonymy demo."""
    return {
        "terms": SYNONYMY_TERMS,
        "doc_ids": SYNONYMY_DOC_IDS,
        "counts": SYNONYMY_COUNTS.copy(),
        "svd_reference": SYNONYMY_SVD_REFERENCE,
        "mu_reference": SYNONYMY_MU_REFERENCE,
        "anls_reference": SYNONYMY_ANLS_REFERENCE,
    }


def polysemy_example() -> dict:
    """Term-document counts and reference values of the polysemy demo."""
    return {
        "terms": POLYSEMY_TERMS,
        "doc_ids": POLYSEMY_DOC_IDS,
        "counts": POLYSEMY_COUNTS.copy(),
        "svd_reference": POLYSEMY_SVD_REFERENCE,
        "mu_reference": POLYSEMY_MU_REFERENCE,
        "anls_reference": POLYSEMY_ANLS_REFERENCE,
    }


def parse_reference(table, floor: float = 0.05, eps_tol: float = 0.1):
    """Turn a printed reference table into (values, tolerances).

    A printed number is trusted to one unit of its last printed digit (its
    source was rounded), never tighter than ``floor``.  ``-eps`` and ``0``
    mark entries known only to be smaller than ``eps_tol`` in magnitude.
    """
    rows_v, rows_t = [], []
    for row in table:
        vals, tols = [], []
        for cell in row:
            if cell in ("-eps", "0"):
                vals.append(0.0)
                tols.append(eps_tol)
            else:
                vals.append(float(cell))
                frac = cell.split(".")[1] if "." in cell else ""
                tols.append(max(floor, 10.0 ** (-len(frac))))
        rows_v.append(vals)
        rows_t.append(tols)
    return np.array(rows_v), np.array(rows_t)


# ---------------------------------------------------------------------------
# 60-document synthetic labeled corpus for the end-to-end pipelines

_FINANCE_VOCAB = (
    "market", "stock", "profit", "trade", "price", "share", "bond",
    "invest", "fund", "broker", "asset", "loan", "credit", "yield",
    "cash", "merger", "equity", "dividend", "ledger", "audit",
)
_NATURE_VOCAB = (
    "river", "stream", "forest", "valley", "stone", "meadow", "otter",
    "heron", "willow", "current", "ripple", "marsh", "reed", "gravel",
    "trout", "moss", "thicket", "brook", "fern", "pebble",
)
_FILLER_VOCAB = ("report", "daily", "note", "group", "small", "large",
                 "early", "quiet")

_CORPUS_QUERIES = (
    ("q1", "stock market profit trade"),
    ("q2", "loan credit fund broker"),
    ("q3", "river stream valley brook"),
    ("q4", "forest meadow willow moss"),
    ("q5", "equity dividend yield"),
    ("q6", "otter heron trout marsh"),
)
_QUERY_CLASS = {"q1": "finance", "q2": "finance", "q3": "nature",
                "q4": "nature", "q5": "finance", "q6": "nature"}


def make_clustering_corpus(n_docs: int = 60, seed: int = 0):
    """Deterministic two-topic corpus with labels, queries and judgments.

    Returns ``(documents, labels, queries, judgments)`` where ``documents``
    is a list of ``(doc_id, text)``, ``labels`` maps doc_id to its class
    name, ``queries`` is a list of ``(query_id, text)`` and ``judgments``
    maps query_id to the set of doc_ids of its topic.
    """
    if n_docs < 2 or n_docs % 2:
        raise ValueError("make_clustering_corpus: n_docs must be even and >= 2")
    rng = np.random.default_rng(seed)
    docs, labels = [], {}
    half = n_docs // 2
    for i in range(n_docs):
        topic = "finance" if i < half else "nature"
        vocab = _FINANCE_VOCAB if topic == "finance" else _NATURE_VOCAB
        n_topic = int(rng.integers(18, 30))
        n_fill = int(rng.integers(2, 5))
        words = [vocab[j] for j in rng.integers(0, len(vocab), n_topic)]
        words += [_FILLER_VOCAB[j] for j in rng.integers(0, len(_FILLER_VOCAB), n_fill)]
        rng.shuffle(words)
        doc_id = f"doc{i:03d}"
        docs.append((doc_id, " ".join(words)))
        labels[doc_id] = topic
    judgments = {
        qid: {d for d, t in docs if labels[d] == _QUERY_CLASS[qid]}
        for qid, _ in _CORPUS_QUERIES
    }
    return docs, labels, list(_CORPUS_QUERIES), judgments
