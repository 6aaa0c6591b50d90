"""Corpus-to-matrix preprocessing.

The pipeline is: tokenize -> drop stopwords -> (optional) stem ->
count matrix over the sorted vocabulary -> (optional) singleton-term
pruning -> (optional) log weighting -> (optional) column normalization.

Two presets cover the bundled workflows: ``LSI_OPTIONS`` (no stemming, no
pruning, log weights, no normalization) for retrieval, and
``CLUSTERING_OPTIONS`` (stemming, pruning, raw counts, column
normalization) for document clustering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ._porter import porter_stem
from ._stopwords import SNOWBALL_STOPWORDS
from .linalg import xu_normalize

__all__ = [
    "Corpus",
    "TermDocMatrix",
    "tokenize",
    "remove_stopwords",
    "porter_stem",
    "build_matrix",
    "build_query_matrix",
    "LSI_OPTIONS",
    "CLUSTERING_OPTIONS",
]

_TOKEN = re.compile(r"[a-z]+")

LSI_OPTIONS = {"stem": False, "prune_singletons": False,
               "weighting": "log", "normalize": "none"}
CLUSTERING_OPTIONS = {"stem": True, "prune_singletons": True,
                      "weighting": "raw", "normalize": "xu"}


@dataclass
class Corpus:
    """Documents as (doc_id, text) pairs with optional class labels."""

    documents: list
    labels: dict | None = None

    def __post_init__(self):
        ids = [d for d, _ in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("Corpus: duplicate doc_ids")

    @property
    def doc_ids(self):
        return [d for d, _ in self.documents]


@dataclass
class TermDocMatrix:
    """Nonnegative term-by-document matrix with its sorted vocabulary."""

    matrix: np.ndarray
    vocabulary: list
    doc_ids: list
    options: dict = field(default_factory=dict)

    @property
    def term_index(self) -> dict:
        return {t: i for i, t in enumerate(self.vocabulary)}


def tokenize(text: str) -> list:
    """Lowercase alphabetic tokens of length >= 2, split on non-letters."""
    return [t for t in _TOKEN.findall(text.lower()) if len(t) >= 2]


def remove_stopwords(terms, stoplist=SNOWBALL_STOPWORDS) -> list:
    """Order-preserving stopword filter."""
    return [t for t in terms if t not in stoplist]


def _terms_of(text, stem, stoplist):
    terms = remove_stopwords(tokenize(text), stoplist)
    if stem:
        terms = [porter_stem(t) for t in terms]
    return terms


def build_matrix(corpus: Corpus, *, stem: bool = False,
                 prune_singletons: bool = False, weighting: str = "log",
                 normalize: str = "none",
                 stoplist=SNOWBALL_STOPWORDS) -> TermDocMatrix:
    """Build the term-document matrix of a corpus.

    Parameters default to the retrieval recipe (``LSI_OPTIONS``); pass
    ``**CLUSTERING_OPTIONS`` for the clustering recipe.  ``weighting`` is
    ``"raw"`` or ``"log"`` (``x -> log(x + 1)``, natural log); ``normalize``
    is ``"none"`` or ``"xu"`` (column scaling by ``diag(A^T A e)^{-1/2}``).
    Terms occurring in fewer than two documents are dropped when
    ``prune_singletons`` is set.

    Raises
    ------
    ValueError
        On an empty corpus, an unknown option value, or an empty vocabulary
        after pruning.
    """
    if weighting not in ("raw", "log"):
        raise ValueError(f"build_matrix: unknown weighting {weighting!r}")
    if normalize not in ("none", "xu"):
        raise ValueError(f"build_matrix: unknown normalize {normalize!r}")
    if not corpus.documents:
        raise ValueError("build_matrix: empty corpus")

    doc_terms = [_terms_of(text, stem, stoplist) for _, text in corpus.documents]
    vocab = sorted({t for terms in doc_terms for t in terms})
    if prune_singletons:
        doc_freq = {t: 0 for t in vocab}
        for terms in doc_terms:
            for t in set(terms):
                doc_freq[t] += 1
        vocab = [t for t in vocab if doc_freq[t] >= 2]
    if not vocab:
        raise ValueError("build_matrix: empty vocabulary after preprocessing")

    index = {t: i for i, t in enumerate(vocab)}
    A = np.zeros((len(vocab), len(corpus.documents)))
    for j, terms in enumerate(doc_terms):
        for t in terms:
            i = index.get(t)
            if i is not None:
                A[i, j] += 1.0
    if weighting == "log":
        A = np.log(A + 1.0)
    if normalize == "xu":
        A = xu_normalize(A)
    return TermDocMatrix(
        matrix=A, vocabulary=vocab, doc_ids=corpus.doc_ids,
        options={"stem": stem, "prune_singletons": prune_singletons,
                 "weighting": weighting, "normalize": normalize},
    )


def build_query_matrix(queries, tdm: TermDocMatrix, stoplist=SNOWBALL_STOPWORDS):
    """Query vectors over the vocabulary of an existing term-doc matrix.

    Queries are ``(query_id, text)`` pairs; each row holds the query's term
    counts processed with the same tokenizer/stemming/weighting as the
    matrix.  Column normalization is never applied to queries.

    Returns ``(Q, query_ids)`` with ``Q`` of shape (n_queries, n_terms).
    """
    opts = tdm.options or {}
    index = tdm.term_index
    Q = np.zeros((len(queries), len(tdm.vocabulary)))
    ids = []
    for r, (qid, text) in enumerate(queries):
        ids.append(qid)
        for t in _terms_of(text, opts.get("stem", False), stoplist):
            i = index.get(t)
            if i is not None:
                Q[r, i] += 1.0
    if opts.get("weighting", "raw") == "log":
        Q = np.log(Q + 1.0)
    return Q, ids
