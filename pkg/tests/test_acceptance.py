"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the pass/fail lines.

Reference-table comparisons use each printed value's own precision (one unit
of its last printed digit, never tighter than the stated 0.05 floor, 0.1 for
entries printed as a small epsilon); the uniquely determined quantities are
additionally pinned against independently derived oracles at much tighter
tolerances.
"""

import itertools
import json
import time

import numpy as np
import pytest

from nmfkit import io as kio
from nmfkit.cli import main as cli_main
from nmfkit.cluster import njw_cluster, nmf_kernel_cluster, kmeans
from nmfkit.datasets import (
    POLYSEMY_COUNTS,
    SYNONYMY_COUNTS,
    SYNONYMY_Q_AUTHOR,
    SYNONYMY_Q_AUTHOR_RAW_SCORES,
    make_blobs,
    make_rings,
)
from nmfkit.demo import run_polysemy_demo, run_synonymy_demo
from nmfkit.lsi import average_precision, pseudo_precision
from nmfkit.metrics import (
    Contingency,
    contingency,
    entropy_metric,
    fmeasure,
    mutual_information,
    purity,
)
from nmfkit.nmf import kkt_report, nmf_anls, nmf_multiplicative
from nmfkit.nnls import nnls_solve
from nmfkit.svd import kyfan_value, truncated_svd


def _report(num, text):
    print(f"ACCEPTANCE {num:2d}: PASS - {text}")


def _block_rank1(block):
    U, s, Vt = np.linalg.svd(block)
    return s[0], np.abs(np.outer(U[:, 0], Vt[0, :]))


def _shrunken_optimum(A, lam):
    """Independent oracle for the ridge-penalized rank-2 factorization of the
    block-diagonal synonymy matrix: each block keeps its leading singular
    direction scaled by (sigma - lam)."""
    out = np.zeros_like(A)
    s1, P1 = _block_rank1(A[:4, :3])
    s2, P2 = _block_rank1(A[4:, 3:])
    out[:4, :3] = (s1 - lam) * P1
    out[4:, 3:] = (s2 - lam) * P2
    return out


def test_criterion_01_synonymy_golden():
    start = time.perf_counter()
    report = run_synonymy_demo(seed=0)
    elapsed = time.perf_counter() - start
    failed = [c.name for c in report.checks if not c.passed]
    assert not failed, f"synonymy reference checks failed: {failed}"

    # derived oracle: the unpenalized optimum is the per-block leading
    # singular component; the penalized one is shrunk by mean(A)
    s1, P1 = _block_rank1(SYNONYMY_COUNTS[:4, :3])
    s2, P2 = _block_rank1(SYNONYMY_COUNTS[4:, 3:])
    optimum = np.zeros_like(SYNONYMY_COUNTS)
    optimum[:4, :3] = s1 * P1
    optimum[4:, 3:] = s2 * P2
    mu_best = min(
        (nmf_multiplicative(SYNONYMY_COUNTS, 2, init=s, max_iter=2000,
                            stall_tol=1e-9).product for s in range(10)),
        key=lambda P: np.abs(P - optimum).max())
    assert np.abs(mu_best - optimum).max() <= 1e-2

    lam = float(SYNONYMY_COUNTS.mean())
    shrunk = _shrunken_optimum(SYNONYMY_COUNTS, lam)
    anls_best = min(
        (nmf_anls(SYNONYMY_COUNTS, 2, init=s, ridge=lam).product
         for s in range(10)),
        key=lambda P: np.abs(P - shrunk).max())
    assert np.abs(anls_best - shrunk).max() <= 1e-4

    assert elapsed < 1.0, f"runtime {elapsed:.2f}s exceeds 1s"
    _report(1, f"synonymy reconstructions match references ({elapsed:.2f}s)")


def test_criterion_02_polysemy_golden():
    start = time.perf_counter()
    report = run_polysemy_demo(seed=0)
    elapsed = time.perf_counter() - start
    failed = [c.name for c in report.checks if not c.passed]
    assert not failed, f"polysemy reference checks failed: {failed}"
    svd_checks = [c for c in report.checks if c.name.startswith("SVD scores")]
    assert svd_checks and all(c.worst_abs <= 5e-4 for c in svd_checks)
    ranking = [c for c in report.checks if "ranking" in c.name]
    assert len(ranking) == 4 and all(c.passed for c in ranking)
    assert elapsed < 1.0, f"runtime {elapsed:.2f}s exceeds 1s"
    _report(2, f"polysemy query scores match references ({elapsed:.2f}s)")


def test_criterion_03_raw_query_exact():
    scores = SYNONYMY_Q_AUTHOR @ SYNONYMY_COUNTS
    assert np.array_equal(scores, SYNONYMY_Q_AUTHOR_RAW_SCORES)
    _report(3, "raw author query scores are exactly [30, 0, 20, 0, 0]")


def test_criterion_04_kyfan_theorem():
    rng = np.random.default_rng(100)
    for _ in range(50):
        m = int(rng.integers(2, 21))
        n = int(rng.integers(2, 16))
        A = rng.normal(size=(m, n))
        K = int(rng.integers(1, min(m, n) + 1))
        t = truncated_svd(A, K)
        value = kyfan_value(A, K)
        assert abs(np.trace(t.U.T @ A @ t.V) - value) <= 1e-9
        for _ in range(4):   # 4 x 50 = 200 orthonormal samples overall
            X = np.linalg.qr(rng.normal(size=(m, K)))[0]
            Y = np.linalg.qr(rng.normal(size=(n, K)))[0]
            assert np.trace(X.T @ A @ Y) <= value + 1e-9
    _report(4, "trace optimum equals the top-K singular value sum (50 matrices)")


def test_criterion_05_nnls_global_optimality():
    rng = np.random.default_rng(101)
    for _ in range(200):
        A = rng.normal(size=(4, 3))
        b = rng.normal(size=4)
        sol = nnls_solve(A, b, tol=1e-10)
        # exhaustive support enumeration as the independent oracle
        best = 0.5 * float(b @ b)
        for r in range(1, 4):
            for sub in itertools.combinations(range(3), r):
                z, *_ = np.linalg.lstsq(A[:, sub], b, rcond=None)
                if np.any(z < 0):
                    continue
                x = np.zeros(3)
                x[list(sub)] = z
                best = min(best, 0.5 * float(np.sum((A @ x - b) ** 2)))
        obj = 0.5 * sol.residual_norm**2
        assert abs(obj - best) <= 1e-9 * (1.0 + best)
        g = A.T @ (A @ sol.x - b)
        assert sol.x.min() >= 0.0
        assert np.all(np.abs(g[sol.x > 0]) <= 1e-10 * (1 + np.abs(g).max()) + 1e-10)
        assert np.all(g[sol.x == 0] >= -1e-10)
    _report(5, "active-set solver matches exhaustive enumeration on 200 instances")


def test_criterion_06_nmf_solver_properties():
    rng = np.random.default_rng(102)
    for i in range(100):
        A = rng.random((10, 8)) + 0.01
        pair = nmf_multiplicative(A, 3, init=i, max_iter=60)
        t = np.asarray(pair.objective_trace)
        assert np.all(t[1:] <= t[:-1] + 1e-10), f"trace increased on instance {i}"
    for i in range(20):
        A = rng.random((8, 6)) + 0.01
        tol = 1e-6 * np.linalg.norm(A)
        pair = nmf_anls(A, 2, init=i, kkt_tol=tol)
        assert pair.stop_reason == "kkt_tol"
        rep = kkt_report(A, pair)
        assert rep.max_residual() <= tol
        assert rep.recon_residual_B is not None and rep.recon_residual_B <= 1e-6
        assert rep.recon_residual_C is not None and rep.recon_residual_C <= 1e-6
    _report(6, "multiplicative descent on 100 instances; ANLS reaches "
               "stationarity tolerance with consistent multiplier recovery")


def test_criterion_07_linear_separability_demo():
    alpha = 0.2
    njw_scores, nmf_scores = [], []
    for seed in range(10):
        ps = make_rings(200, [1.0, 3.0], 0.05, seed=seed)
        res_njw = njw_cluster(ps, 2, alpha=alpha, seed=seed)
        res_nmf = nmf_kernel_cluster(ps, 2, alpha=alpha, solver="mu", seed=seed)
        njw_scores.append(purity(contingency(res_njw, ps.reference_labels)))
        nmf_scores.append(purity(contingency(res_nmf, ps.reference_labels)))
    assert np.mean(njw_scores) >= 0.95, f"NJW mean purity {np.mean(njw_scores)}"
    assert np.mean(nmf_scores) < np.mean(njw_scores), (
        f"kernel factorization purity {np.mean(nmf_scores)} not below "
        f"spectral {np.mean(njw_scores)}")

    blobs = make_blobs(30, [[0.0, 0.0], [8.0, 8.0]], sd=0.3, seed=0)
    for res in (
        njw_cluster(blobs, 2, alpha=0.5, seed=0),
        nmf_kernel_cluster(blobs, 2, alpha=0.5, solver="mu", seed=0),
        nmf_kernel_cluster(blobs, 2, alpha=0.5, solver="anls", seed=0),
        kmeans(blobs.coordinates, 2, seed=0),
    ):
        assert purity(contingency(res, blobs.reference_labels)) == 1.0
    _report(7, f"two-ring spectral purity {np.mean(njw_scores):.3f} vs kernel "
               f"factorization {np.mean(nmf_scores):.3f}; blobs all 1.0")


def test_criterion_08_metric_oracles():
    def brute(counts):
        counts = np.asarray(counts, dtype=float)
        n = counts.sum()
        mi = ent = 0.0
        for r in range(counts.shape[0]):
            cr = counts[r].sum()
            for s in range(counts.shape[1]):
                c = counts[r, s]
                if c > 0:
                    mi += (c / n) * np.log2((c / n) / ((cr / n) * (counts[:, s].sum() / n)))
                    ent += c * np.log2(c / cr)
        ent = -ent / (n * np.log2(counts.shape[1]))
        pur = sum(row.max() for row in counts) / n
        fm = 0.0
        for r in range(counts.shape[0]):
            s = int(np.argmax(counts[r]))
            prec = counts[r, s] / counts[r].sum() if counts[r].sum() else 0.0
            rec = counts[r, s] / counts[:, s].sum() if counts[:, s].sum() else 0.0
            fm += 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        return mi, ent, pur, fm / counts.shape[0]

    rng = np.random.default_rng(103)
    checked = 0
    while checked < 500:
        R = int(rng.integers(1, 5))
        S = int(rng.integers(2, 5))
        counts = rng.integers(0, 8, size=(R, S))
        if counts.sum() == 0:
            continue
        t = Contingency(counts=counts, cluster_sizes=counts.sum(axis=1),
                        class_sizes=counts.sum(axis=0), N=int(counts.sum()))
        mi, ent, pur, fm = brute(counts)
        assert abs(mutual_information(t) - mi) <= 1e-12
        assert abs(entropy_metric(t) - ent) <= 1e-12
        assert abs(purity(t) - pur) <= 1e-12
        assert abs(fmeasure(t) - fm) <= 1e-12
        checked += 1

    cross = Contingency(counts=np.array([[2, 1], [1, 2]]),
                        cluster_sizes=np.array([3, 3]),
                        class_sizes=np.array([3, 3]), N=6)
    assert mutual_information(cross) == pytest.approx(0.08170, abs=5e-6)
    assert entropy_metric(cross) == pytest.approx(0.91830, abs=5e-6)
    assert purity(cross) == pytest.approx(2 / 3, abs=1e-12)
    assert fmeasure(cross) == pytest.approx(2 / 3, abs=1e-12)
    _report(8, "all four metrics match direct-summation oracles on 500 tables")


def test_criterion_09_average_precision_oracle():
    ap = average_precision([True, False, True, False], I=11)
    assert ap == pytest.approx(28 / 33, abs=1e-12)   # = 9.333.../11 = 0.848485
    rng = np.random.default_rng(104)
    for _ in range(1000):
        n = int(rng.integers(1, 25))
        rel = rng.random(n) < 0.4
        if not rel.any():
            rel[int(rng.integers(0, n))] = True
        values = [pseudo_precision(rel.tolist(), x / 10.0) for x in range(11)]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
    _report(9, "interpolated average precision oracle and pseudo-precision "
               "monotonicity on 1000 rankings")


def test_criterion_10_end_to_end_pipeline(tmp_path):
    start = time.perf_counter()
    corpus_dir = tmp_path / "corpus"
    assert cli_main(["gen-data", "--kind", "corpus", "--outdir",
                     str(corpus_dir), "--n-docs", "60", "--seed", "0"]) == 0

    purities = {}
    for method in ("svd", "nmf-anls"):
        out = tmp_path / f"cluster_{method}"
        rc = cli_main(["cluster", "--corpus", str(corpus_dir / "corpus.tsv"),
                       "--labels", str(corpus_dir / "labels.tsv"),
                       "--method", method, "--k", "2", "--trials", "3",
                       "--seed", "0", "--outdir", str(out)])
        assert rc == 0
        summary = json.loads((out / "summary.json").read_text())
        assert set(summary["average"]) == {"mi", "entropy", "purity",
                                           "fmeasure", "seconds"}
        purities[method] = summary["average"]["purity"]
        assert purities[method] >= 0.9, f"{method} purity {purities[method]}"

    lsi_out = tmp_path / "lsi"
    rc = cli_main(["lsi-eval", "--corpus", str(corpus_dir / "corpus.tsv"),
                   "--queries", str(corpus_dir / "queries.tsv"),
                   "--judgments", str(corpus_dir / "judgments.tsv"),
                   "--method", "svd", "--ranks", "2,4,8", "--seed", "0",
                   "--outdir", str(lsi_out)])
    assert rc == 0
    summary = json.loads((lsi_out / "summary.json").read_text())
    assert {"method", "ranks", "trials", "per_rank", "best",
            "skipped_queries"} <= set(summary)
    assert all({"rank", "mean_ap"} <= set(row) for row in summary["per_rank"])
    best = summary["best"]
    assert best["val_rank"] == f"{best['mean_ap']:.4f}({best['rank']})"
    sweep = (lsi_out / "sweep.csv").read_text().splitlines()
    assert sweep[0] == "rank,trial,mean_ap" and len(sweep) == 4

    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"runtime {elapsed:.1f}s exceeds 30s"
    _report(10, f"end-to-end corpus pipelines: purity svd={purities['svd']:.3f}, "
                f"anls={purities['nmf-anls']:.3f}; schema-valid report "
                f"({elapsed:.1f}s)")
