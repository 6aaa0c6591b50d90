"""File formats: matrices (CSV / MatrixMarket), corpora and run artifacts.

Numeric matrices round-trip exactly: dense CSV uses 17-significant-digit
fields and MatrixMarket files are written at full precision.  Record-style
CSVs (points, labels) carry a header row; matrix CSVs do not.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from .cluster import PointSet2D
from .nmf import FactorPair, nmf_objective
from .textprep import Corpus

__all__ = [
    "read_dense_csv", "write_dense_csv",
    "read_matrix_market", "write_matrix_market",
    "read_matrix", "write_matrix",
    "read_corpus_tsv", "read_corpus_dir", "read_labels_tsv",
    "read_queries_tsv", "read_judgments_tsv", "read_stoplist",
    "save_factor_pair", "load_factor_pair",
    "write_points_csv", "read_points_csv", "write_labels_csv",
]


# ---------------------------------------------------------------------------
# matrices

def write_dense_csv(path, A) -> None:
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError("write_dense_csv: expected a 2-d matrix")
    with open(path, "w", encoding="utf-8") as fh:
        for row in A:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def read_dense_csv(path) -> np.ndarray:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(v) for v in line.split(",")])
    if not rows:
        raise ValueError(f"read_dense_csv: empty file {path}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"read_dense_csv: ragged rows in {path}")
    return np.array(rows, dtype=np.float64)


def write_matrix_market(path, A) -> None:
    """Sparse coordinate MatrixMarket at full float64 precision."""
    scipy.io.mmwrite(str(path), sp.coo_matrix(A), precision=17)


def read_matrix_market(path):
    return sp.csc_matrix(scipy.io.mmread(str(path)))


def read_matrix(path):
    """Dispatch on suffix: .mtx/.mm MatrixMarket, .csv dense CSV."""
    suffix = Path(path).suffix.lower()
    if suffix in (".mtx", ".mm"):
        return read_matrix_market(path)
    if suffix == ".csv":
        return read_dense_csv(path)
    raise ValueError(f"read_matrix: unsupported matrix format {suffix!r}")


def write_matrix(path, A) -> None:
    suffix = Path(path).suffix.lower()
    if suffix in (".mtx", ".mm"):
        write_matrix_market(path, A)
    elif suffix == ".csv":
        write_dense_csv(path, np.asarray(A.todense()) if sp.issparse(A) else A)
    else:
        raise ValueError(f"write_matrix: unsupported matrix format {suffix!r}")


# ---------------------------------------------------------------------------
# corpora, queries, judgments

def _read_tsv_pairs(path, what):
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t", 1)
            if len(parts) != 2:
                raise ValueError(f"{what}: line {ln} of {path} is not two-column TSV")
            pairs.append((parts[0].strip(), parts[1]))
    return pairs


def read_corpus_tsv(path, labels_path=None) -> Corpus:
    """Two-column TSV (doc_id, text), optional (doc_id, class) labels file."""
    docs = _read_tsv_pairs(path, "corpus")
    labels = read_labels_tsv(labels_path) if labels_path else None
    return Corpus(documents=docs, labels=labels)


def read_corpus_dir(path, labels_path=None) -> Corpus:
    """Directory of plain-text files; doc_id is the file name without suffix."""
    files = sorted(Path(path).glob("*.txt"))
    if not files:
        raise ValueError(f"read_corpus_dir: no .txt files under {path}")
    docs = [(f.stem, f.read_text(encoding="utf-8")) for f in files]
    labels = read_labels_tsv(labels_path) if labels_path else None
    return Corpus(documents=docs, labels=labels)


def read_labels_tsv(path) -> dict:
    return dict(_read_tsv_pairs(path, "labels"))


def read_queries_tsv(path) -> list:
    return _read_tsv_pairs(path, "queries")


def read_judgments_tsv(path) -> dict:
    """One (query_id, relevant_doc_id) pair per line."""
    out: dict = {}
    for qid, doc in _read_tsv_pairs(path, "judgments"):
        out.setdefault(qid, set()).add(doc.strip())
    return out


def read_stoplist(path) -> frozenset:
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


# ---------------------------------------------------------------------------
# run artifacts

def save_factor_pair(outdir, pair: FactorPair, A=None) -> None:
    """Two CSV factor files plus a JSON header next to them."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_dense_csv(outdir / "B.csv", pair.B)
    write_dense_csv(outdir / "C.csv", pair.C)
    header = {
        "rank": pair.rank,
        "iterations": pair.iterations,
        "stop_reason": pair.stop_reason,
        "ridge": pair.ridge,
        "final_objective": pair.objective_trace[-1] if pair.objective_trace else None,
    }
    if A is not None:
        header["objective_check"] = nmf_objective(A, pair.B, pair.C)
    (outdir / "header.json").write_text(json.dumps(header, indent=2) + "\n",
                                        encoding="utf-8")


def load_factor_pair(outdir) -> FactorPair:
    outdir = Path(outdir)
    header = json.loads((outdir / "header.json").read_text(encoding="utf-8"))
    B = read_dense_csv(outdir / "B.csv")
    C = read_dense_csv(outdir / "C.csv")
    return FactorPair(B=B, C=C, rank=int(header["rank"]),
                      objective_trace=[header["final_objective"]]
                      if header.get("final_objective") is not None else [],
                      iterations=int(header["iterations"]),
                      stop_reason=header["stop_reason"],
                      ridge=float(header.get("ridge", 0.0)))


def write_points_csv(path, points: PointSet2D) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "class"])
        for (x, y), c in zip(points.coordinates, points.reference_labels):
            w.writerow([format(x, ".17g"), format(y, ".17g"), int(c)])


def read_points_csv(path) -> PointSet2D:
    coords, labels = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:3] != ["x", "y", "class"]:
            raise ValueError(f"read_points_csv: unexpected header {header!r}")
        for row in reader:
            coords.append((float(row[0]), float(row[1])))
            labels.append(int(row[2]))
    return PointSet2D(np.array(coords), np.array(labels, dtype=np.intp))


def write_labels_csv(path, item_ids, labels) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["item_id", "label"])
        for item, lab in zip(item_ids, labels):
            w.writerow([item, int(lab)])
