"""Command-line front-end.

Subcommands: ``decompose``, ``cluster``, ``lsi-eval``, ``paper-demo``,
``gen-data``.  Every run is deterministic given ``--seed``; per-trial seeds
are ``seed + trial_index``.  Flags may also be supplied through a
``key = value`` config file (``--config``); explicit flags win and unknown
keys are rejected.  ``NMFKIT_THREADS`` caps trial-level parallelism (the
output is identical to a serial run).

Exit codes: 0 success, 1 self-check or convergence failure, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io as kio
from .cluster import kmeans, njw_cluster, nmf_doc_cluster, nmf_kernel_cluster, svd_doc_cluster
from .datasets import make_blobs, make_clustering_corpus, make_moons, make_rings
from .demo import run_polysemy_demo, run_synonymy_demo
from .lsi import QuerySet, RelevanceJudgments, evaluate_run, rank_sweep
from .metrics import metrics_report
from .nmf import kkt_report, nmf_anls, nmf_multiplicative
from .svd import truncated_svd
from ._stopwords import SNOWBALL_STOPWORDS
from .textprep import CLUSTERING_OPTIONS, LSI_OPTIONS, build_matrix, build_query_matrix
from .validation import to_dense

POINT_METHODS = ("njw", "nmf-mu", "nmf-anls", "kmeans")
DOC_METHODS = ("svd", "nmf-mu", "nmf-anls")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("NMFKIT_THREADS", "1")))
    except ValueError:
        return 1


def _read_config(path) -> dict:
    """Flat ``key = value`` file; '#' starts a comment."""
    conf = {}
    for ln, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {ln}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        conf[key.replace("-", "_")] = value.strip("'\"")
    return conf


def _merge_config(args, schema) -> dict:
    """Resolve each parameter: explicit flag > config file > default."""
    conf = _read_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(conf) - set(schema)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    out = {}
    for key, (cast, default) in schema.items():
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in conf:
            out[key] = cast(conf[key])
        else:
            out[key] = default
    return out


def _int_list(text) -> list:
    return [int(t) for t in str(text).replace(";", ",").split(",") if t.strip()]


def _float_list(text) -> list:
    return [float(t) for t in str(text).replace(";", ",").split(",") if t.strip()]


def _parallel_trials(n, worker):
    """Run ``worker(trial)`` for trial 0..n-1, order-preserving."""
    workers = min(_threads(), n)
    if workers <= 1:
        return [worker(t) for t in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, range(n)))


# ---------------------------------------------------------------------------
# decompose

DECOMPOSE_SPEC = {
    "input": (str, None), "method": (str, "svd"), "rank": (int, 2),
    "seed": (int, 0), "max_iter": (int, 500), "tol": (float, 1e-6),
    "kkt_tol": (float, None), "ridge": (float, 0.0), "outdir": (str, "out"),
}


def cmd_decompose(args) -> int:
    cfg = _merge_config(args, DECOMPOSE_SPEC)
    if not cfg["input"]:
        raise ValueError("decompose: --input is required")
    if cfg["method"] not in ("svd", "nmf-mu", "nmf-anls"):
        raise ValueError(f"decompose: unknown method {cfg['method']!r}")
    A = kio.read_matrix(cfg["input"])
    if not 1 <= cfg["rank"] <= min(A.shape):
        raise ValueError(f"decompose: rank {cfg['rank']} out of range [1, {min(A.shape)}]")
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    if cfg["method"] == "svd":
        t = truncated_svd(to_dense(A), cfg["rank"], seed=cfg["seed"])
        kio.write_dense_csv(outdir / "singular_values.csv", t.S[None, :])
        kio.write_dense_csv(outdir / "U.csv", t.U)
        kio.write_dense_csv(outdir / "V.csv", t.V)
        header = {"method": "svd", "rank": cfg["rank"], "seed": cfg["seed"],
                  "singular_values": [float(s) for s in t.S]}
    else:
        if cfg["method"] == "nmf-mu":
            pair = nmf_multiplicative(A, cfg["rank"], init=cfg["seed"],
                                      max_iter=cfg["max_iter"], stall_tol=cfg["tol"])
        else:
            pair = nmf_anls(A, cfg["rank"], init=cfg["seed"],
                            max_iter=cfg["max_iter"], kkt_tol=cfg["kkt_tol"],
                            ridge=cfg["ridge"])
        kio.save_factor_pair(outdir, pair, A=A)
        kio.write_dense_csv(outdir / "objective_trace.csv",
                            np.asarray(pair.objective_trace)[None, :])
        rep = kkt_report(A, pair)
        header = json.loads((outdir / "header.json").read_text(encoding="utf-8"))
        header.update({
            "method": cfg["method"], "seed": cfg["seed"],
            "kkt": {"comp_slack_B": rep.comp_slack_B,
                    "comp_slack_C": rep.comp_slack_C,
                    "dual_feas_B": rep.dual_feas_B,
                    "dual_feas_C": rep.dual_feas_C},
        })
    (outdir / "header.json").write_text(json.dumps(header, indent=2) + "\n",
                                        encoding="utf-8")
    print(f"decompose: wrote {cfg['method']} rank-{cfg['rank']} artifacts to {outdir}")
    return 0


# ---------------------------------------------------------------------------
# cluster

CLUSTER_SPEC = {
    "points": (str, None), "corpus": (str, None), "labels": (str, None),
    "method": (str, "njw"), "k": (int, 2), "alpha": (float, 0.3),
    "trials": (int, 10), "seed": (int, 0), "restarts": (int, 10),
    "ridge": (float, 0.0), "stoplist": (str, None), "outdir": (str, "out"),
}


def _cluster_once(cfg, trial, data, reference):
    seed = cfg["seed"] + trial
    method = cfg["method"]
    start = time.perf_counter()
    if cfg["points"]:
        if method == "njw":
            res = njw_cluster(data, cfg["k"], cfg["alpha"], seed=seed,
                              restarts=cfg["restarts"])
        elif method == "kmeans":
            res = kmeans(data.coordinates, cfg["k"], seed=seed,
                         restarts=cfg["restarts"])
        else:
            res = nmf_kernel_cluster(data, cfg["k"], cfg["alpha"],
                                     solver=method.split("-")[1], seed=seed,
                                     ridge=cfg["ridge"])
    else:
        if method == "svd":
            res = svd_doc_cluster(data, cfg["k"], seed=seed,
                                  restarts=cfg["restarts"])
        else:
            res = nmf_doc_cluster(data, cfg["k"], solver=method.split("-")[1],
                                  seed=seed, ridge=cfg["ridge"])
    seconds = time.perf_counter() - start
    report = metrics_report(res, reference)
    report.update({"trial": trial, "seed": seed, "seconds": seconds})
    return report


def cmd_cluster(args) -> int:
    cfg = _merge_config(args, CLUSTER_SPEC)
    if bool(cfg["points"]) == bool(cfg["corpus"]):
        raise ValueError("cluster: provide exactly one of --points / --corpus")
    if cfg["trials"] < 1:
        raise ValueError("cluster: trials must be >= 1")
    if cfg["points"]:
        if cfg["method"] not in POINT_METHODS:
            raise ValueError(f"cluster: point methods are {POINT_METHODS}")
        data = kio.read_points_csv(cfg["points"])
        reference = data.reference_labels
    else:
        if cfg["method"] not in DOC_METHODS:
            raise ValueError(f"cluster: corpus methods are {DOC_METHODS}")
        if not cfg["labels"]:
            raise ValueError("cluster: --labels is required with --corpus")
        corpus_path = Path(cfg["corpus"])
        corpus = (kio.read_corpus_dir(corpus_path, cfg["labels"])
                  if corpus_path.is_dir()
                  else kio.read_corpus_tsv(corpus_path, cfg["labels"]))
        missing = [d for d in corpus.doc_ids if d not in corpus.labels]
        if missing:
            raise ValueError(f"cluster: documents without labels: {missing[:5]}")
        opts = dict(CLUSTERING_OPTIONS)
        if cfg["stoplist"]:
            opts["stoplist"] = kio.read_stoplist(cfg["stoplist"])
        tdm = build_matrix(corpus, **opts)
        data = tdm.matrix
        reference = [corpus.labels[d] for d in tdm.doc_ids]

    rows = _parallel_trials(cfg["trials"],
                            lambda t: _cluster_once(cfg, t, data, reference))
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    keys = ("mi", "entropy", "purity", "fmeasure", "seconds")
    with open(outdir / "trials.csv", "w", encoding="utf-8") as fh:
        fh.write("trial,seed," + ",".join(keys) + "\n")
        for r in rows:
            fh.write(f"{r['trial']},{r['seed']},"
                     + ",".join(format(r[k], ".10g") for k in keys) + "\n")
    summary = {
        "method": cfg["method"], "k": cfg["k"], "trials": cfg["trials"],
        "seed": cfg["seed"],
        "average": {k: float(np.mean([r[k] for r in rows])) for k in keys},
        "per_trial": rows,
    }
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n",
                                         encoding="utf-8")
    avg = summary["average"]
    print("cluster: " + "  ".join(f"{k}={avg[k]:.4f}" for k in keys))
    return 0


# ---------------------------------------------------------------------------
# lsi-eval

LSI_SPEC = {
    "corpus": (str, None), "queries": (str, None), "judgments": (str, None),
    "method": (str, "svd"), "ranks": (_int_list, None), "trials": (int, 10),
    "seed": (int, 0), "interp_points": (int, 11), "ridge": (float, 0.0),
    "stoplist": (str, None), "outdir": (str, "out"),
}


def cmd_lsi_eval(args) -> int:
    cfg = _merge_config(args, LSI_SPEC)
    for key in ("corpus", "queries", "judgments"):
        if not cfg[key]:
            raise ValueError(f"lsi-eval: --{key} is required")
    if not cfg["ranks"]:
        raise ValueError("lsi-eval: --ranks must list at least one rank")
    method = cfg["method"].replace("-", "_")
    corpus_path = Path(cfg["corpus"])
    corpus = (kio.read_corpus_dir(corpus_path) if corpus_path.is_dir()
              else kio.read_corpus_tsv(corpus_path))
    opts = dict(LSI_OPTIONS)
    if cfg["stoplist"]:
        opts["stoplist"] = kio.read_stoplist(cfg["stoplist"])
    tdm = build_matrix(corpus, **opts)
    Q, qids = build_query_matrix(kio.read_queries_tsv(cfg["queries"]), tdm,
                                 stoplist=opts.get("stoplist", SNOWBALL_STOPWORDS))
    qs = QuerySet(Q=Q, query_ids=qids)
    judgments = RelevanceJudgments(kio.read_judgments_tsv(cfg["judgments"]))

    rows = rank_sweep(tdm.matrix, qs, judgments, method, cfg["ranks"],
                      trials=cfg["trials"], seed=cfg["seed"],
                      doc_ids=tdm.doc_ids, I=cfg["interp_points"],
                      ridge=cfg["ridge"])
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "sweep.csv", "w", encoding="utf-8") as fh:
        fh.write("rank,trial,mean_ap\n")
        for rank, trial, ap in rows:
            fh.write(f"{rank},{trial},{ap:.10g}\n")
    per_rank = []
    for rank in cfg["ranks"]:
        vals = [ap for r, _, ap in rows if r == rank]
        per_rank.append({"rank": rank, "mean_ap": float(np.mean(vals))})
    best = max(per_rank, key=lambda d: d["mean_ap"])
    baseline = evaluate_run(qs, judgments, tdm.matrix, doc_ids=tdm.doc_ids,
                            I=cfg["interp_points"])
    summary = {
        "method": cfg["method"], "ranks": cfg["ranks"], "trials": cfg["trials"],
        "seed": cfg["seed"], "interp_points": cfg["interp_points"],
        "queries": len(qids), "skipped_queries": baseline.skipped_queries,
        "per_rank": per_rank,
        "best": {**best, "val_rank": f"{best['mean_ap']:.4f}({best['rank']})"},
    }
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n",
                                         encoding="utf-8")
    print(f"lsi-eval: best mean average precision {summary['best']['val_rank']}")
    return 0


# ---------------------------------------------------------------------------
# paper-demo and gen-data

DEMO_SPEC = {"which": (str, None), "seed": (int, 0)}


def cmd_paper_demo(args) -> int:
    cfg = _merge_config(args, DEMO_SPEC)
    runners = {"synonymy": run_synonymy_demo, "polysemy": run_polysemy_demo}
    if cfg["which"] not in runners:
        raise ValueError("paper-demo: --which must be 'synonymy' or 'polysemy'")
    report = runners[cfg["which"]](seed=cfg["seed"])
    print(report.render())
    return 0 if report.passed else 1


GEN_SPEC = {
    "kind": (str, None), "out": (str, None), "outdir": (str, None),
    "n_per_ring": (int, 200), "radii": (_float_list, [1.0, 3.0]),
    "noise": (float, 0.05), "n_per_moon": (int, 200), "n_per_blob": (int, 100),
    "sd": (float, 0.1), "n_docs": (int, 60), "seed": (int, 0),
}


def cmd_gen_data(args) -> int:
    cfg = _merge_config(args, GEN_SPEC)
    kind = cfg["kind"]
    if kind in ("rings", "moons", "blobs"):
        if not cfg["out"]:
            raise ValueError("gen-data: --out is required for point sets")
        if kind == "rings":
            ps = make_rings(cfg["n_per_ring"], cfg["radii"], cfg["noise"], cfg["seed"])
        elif kind == "moons":
            ps = make_moons(cfg["n_per_moon"], cfg["noise"], cfg["seed"])
        else:
            centers = [[0.0, 0.0], [6.0, 6.0]]
            ps = make_blobs(cfg["n_per_blob"], centers, cfg["sd"], cfg["seed"])
        kio.write_points_csv(cfg["out"], ps)
        print(f"gen-data: wrote {len(ps.reference_labels)} points to {cfg['out']}")
        return 0
    if kind == "corpus":
        if not cfg["outdir"]:
            raise ValueError("gen-data: --outdir is required for the corpus")
        outdir = Path(cfg["outdir"])
        outdir.mkdir(parents=True, exist_ok=True)
        docs, labels, queries, judgments = make_clustering_corpus(
            cfg["n_docs"], cfg["seed"])
        with open(outdir / "corpus.tsv", "w", encoding="utf-8") as fh:
            for doc_id, text in docs:
                fh.write(f"{doc_id}\t{text}\n")
        with open(outdir / "labels.tsv", "w", encoding="utf-8") as fh:
            for doc_id, _ in docs:
                fh.write(f"{doc_id}\t{labels[doc_id]}\n")
        with open(outdir / "queries.tsv", "w", encoding="utf-8") as fh:
            for qid, text in queries:
                fh.write(f"{qid}\t{text}\n")
        with open(outdir / "judgments.tsv", "w", encoding="utf-8") as fh:
            for qid, _ in queries:
                for doc_id in sorted(judgments[qid]):
                    fh.write(f"{qid}\t{doc_id}\n")
        print(f"gen-data: wrote {len(docs)}-document corpus to {outdir}")
        return 0
    raise ValueError("gen-data: --kind must be rings, moons, blobs or corpus")


# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nmfkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="factorize a matrix (svd / nmf-mu / nmf-anls)")
    _add_common(p)
    p.add_argument("--input")
    p.add_argument("--method", choices=("svd", "nmf-mu", "nmf-anls"))
    p.add_argument("--rank", type=int)
    p.add_argument("--max-iter", dest="max_iter", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--kkt-tol", dest="kkt_tol", type=float)
    p.add_argument("--ridge", type=float)
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cluster", help="cluster a point set or a labeled corpus")
    _add_common(p)
    p.add_argument("--points")
    p.add_argument("--corpus")
    p.add_argument("--labels")
    p.add_argument("--method", choices=sorted(set(POINT_METHODS + DOC_METHODS)))
    p.add_argument("--k", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--ridge", type=float)
    p.add_argument("--stoplist")
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("lsi-eval", help="rank sweep of retrieval average precision")
    _add_common(p)
    p.add_argument("--corpus")
    p.add_argument("--queries")
    p.add_argument("--judgments")
    p.add_argument("--method", choices=("svd", "nmf-mu", "nmf-anls"))
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--trials", type=int)
    p.add_argument("--interp-points", dest="interp_points", type=int)
    p.add_argument("--ridge", type=float)
    p.add_argument("--stoplist")
    p.add_argument("--outdir")
    p.set_defaults(func=cmd_lsi_eval)

    p = sub.add_parser("paper-demo",
                       help="run a bundled worked example with self-checks")
    _add_common(p)
    p.add_argument("--which", choices=("synonymy", "polysemy"))
    p.set_defaults(func=cmd_paper_demo)

    p = sub.add_parser("gen-data", help="generate synthetic point sets or a corpus")
    _add_common(p)
    p.add_argument("--kind", choices=("rings", "moons", "blobs", "corpus"))
    p.add_argument("--out")
    p.add_argument("--outdir")
    p.add_argument("--n-per-ring", dest="n_per_ring", type=int)
    p.add_argument("--radii", type=_float_list)
    p.add_argument("--noise", type=float)
    p.add_argument("--n-per-moon", dest="n_per_moon", type=int)
    p.add_argument("--n-per-blob", dest="n_per_blob", type=int)
    p.add_argument("--sd", type=float)
    p.add_argument("--n-docs", dest="n_docs", type=int)
    p.set_defaults(func=cmd_gen_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # argparse usage errors exit with code 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
