"""Command-line interface.

Subcommands: generate, degrade, predict, communities, auc, nmi, experiment,
summarize. Exit code 0 on success; on failure one machine-parsable line
``netgaps: error: <message>`` goes to stderr and the exit code is 1.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import __version__
from . import community as comm
from . import degrade as deg
from . import generators as gen
from . import harness
from . import linkpred as lp
from .graph import Graph, load_edge_list, save_edge_list
from .seeds import derive_seed


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netgaps")
    ap.add_argument("--version", action="version", version=f"netgaps {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic network")
    p.add_argument("--type", choices=("er", "lfr"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k_avg", type=float, required=True)
    p.add_argument("--k_max", type=int)
    p.add_argument("--tau1", type=float, default=2.0)
    p.add_argument("--tau2", type=float, default=1.0)
    p.add_argument("--mu", type=float)
    p.add_argument("--c_min", type=int)
    p.add_argument("--c_max", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--communities", help="write ground-truth communities here (lfr)")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("degrade", help="produce an incomplete copy of a network")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", choices=deg.MODEL_KINDS, default=deg.RANDOM)
    p.add_argument("--fraction", type=float, required=True,
                   help="observed-edge fraction in (0, 1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--connected", action="store_true",
                   help="never delete a bridge (connected variant)")
    p.add_argument("--suite", action="store_true",
                   help="emit crawled/induced/random/limited comparable set")
    p.add_argument("--output", help="observed edge list (single model)")
    p.add_argument("--output-dir", help="directory for --suite output")
    p.set_defaults(fn=cmd_degrade)

    p = sub.add_parser("predict", help="score all candidate pairs")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", default=",".join(lp.SCORER_IDS),
                   help="comma-separated scorer ids")
    p.add_argument("--output", required=True, help="CSV path")
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("communities", help="detect communities")
    p.add_argument("--algo", choices=("louvain", "labelprop", "reference"),
                   required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="partition file")
    p.set_defaults(fn=cmd_communities)

    p = sub.add_parser("auc", help="AUC of scored pairs against known positives")
    p.add_argument("--scores", required=True, help="CSV from 'predict'")
    p.add_argument("--positives", required=True, help="edge list of removed edges")
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_auc)

    p = sub.add_parser("nmi", help="normalized mutual information of two partitions")
    p.add_argument("p1")
    p.add_argument("p2")
    p.set_defaults(fn=cmd_nmi)

    p = sub.add_parser("experiment", help="run a seeded experiment plan")
    p.add_argument("--plan", help="JSON plan file")
    p.add_argument("--pipeline", choices=(harness.PREDICTION, harness.COMMUNITY))
    p.add_argument("--source", help="edge-list path (overrides plan source)")
    p.add_argument("--fractions", help="comma-separated observed fractions")
    p.add_argument("--models", help="comma-separated degradation models")
    p.add_argument("--methods", help="comma-separated scorers or detectors")
    p.add_argument("--replicas", type=int)
    p.add_argument("--master-seed", type=int, dest="master_seed")
    p.add_argument("--output-dir", dest="output_dir")
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("summarize", help="aggregate a results CSV")
    p.add_argument("--rows", required=True)
    p.add_argument("--output", help="summary CSV (default: stdout)")
    p.set_defaults(fn=cmd_summarize)
    return ap


# -- subcommand bodies -----------------------------------------------------------


def cmd_generate(args) -> int:
    if args.type == "er":
        if args.communities:
            raise ValueError("--communities is only meaningful for --type lfr")
        g = gen.generate_er(gen.ErParams(args.n, args.k_avg, args.seed))
        save_edge_list(g, args.output)
    else:
        for name in ("k_max", "mu", "c_min", "c_max"):
            if getattr(args, name) is None:
                raise ValueError(f"--{name} is required for --type lfr")
        pg = gen.generate_lfr(gen.LfrParams(
            n=args.n, mean_degree=args.k_avg, max_degree=args.k_max,
            degree_exponent=args.tau1, community_exponent=args.tau2,
            mixing=args.mu, c_min=args.c_min, c_max=args.c_max, seed=args.seed))
        save_edge_list(pg.graph, args.output)
        if args.communities:
            _write_partition(pg.graph, pg.communities, args.communities)
    print(args.output)
    return 0


def _target_edges(g: Graph, fraction: float) -> int:
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction {fraction} outside (0, 1]")
    return int(round(fraction * g.num_edges))


def cmd_degrade(args) -> int:
    g = load_edge_list(args.graph)
    target = _target_edges(g, args.fraction)
    if args.suite:
        out_dir = args.output_dir or os.environ.get(harness.OUTPUT_DIR_ENV, ".")
        os.makedirs(out_dir, exist_ok=True)
        suite = deg.make_community_suite(g, target, args.seed)
        for name, dn in suite.degraded().items():
            path = os.path.join(out_dir, f"{name}.edges")
            save_edge_list(dn.observed, path)
            _write_provenance(g, dn, path + ".provenance.txt")
            print(path)
        return 0
    if not args.output:
        raise ValueError("--output is required without --suite")
    if args.model == deg.CRAWLED:
        dn = deg.crawl(g, target, args.seed)
    elif args.model == deg.RANDOM:
        dn = deg.random_delete(g, target, args.seed, keep_connected=args.connected)
    else:
        dn = deg.limited_degree_delete(g, target, args.seed,
                                       keep_connected=args.connected)
    save_edge_list(dn.observed, args.output)
    _write_provenance(g, dn, args.output + ".provenance.txt")
    print(args.output)
    return 0


def _write_provenance(g: Graph, dn: deg.DegradedNetwork, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"model {dn.model.kind}\n")
        fh.write(f"connected_variant {str(dn.model.connected_variant).lower()}\n")
        fh.write(f"seed {dn.seed}\n")
        fh.write(f"observed_edges {dn.observed.num_edges}\n")
        fh.write(f"observed_vertices {dn.observed.n}\n")
        fh.write(f"removed_edges {dn.removed_edges.shape[0]}\n")
        for u, v in dn.removed_edges:
            fh.write(f"removed {g.label_of(int(u))} {g.label_of(int(v))}\n")


def cmd_predict(args) -> int:
    g = load_edge_list(args.graph)
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    pairs = lp.candidate_pairs(g)
    scored = lp.score_all(g, pairs, methods)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["u_label", "v_label"] + methods)
        for i, (u, v) in enumerate(scored.pairs):
            w.writerow([g.label_of(int(u)), g.label_of(int(v))]
                       + [repr(float(scored.scores[m][i])) for m in methods])
    print(args.output)
    return 0


def cmd_communities(args) -> int:
    g = load_edge_list(args.graph)
    if args.algo == "louvain":
        part = comm.louvain(g, args.seed)
    elif args.algo == "labelprop":
        part = comm.label_propagation(g, args.seed)
    else:
        part = comm.reference_partition(g, args.seed)
    _write_partition(g, part, args.output)
    print(args.output)
    return 0


def _write_partition(g: Graph, part: comm.Partition, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in range(g.n):
            fh.write(f"{g.label_of(v)} {int(part.assignment[v])}\n")


def _read_partition(path: str) -> dict[str, int]:
    out: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith("#") or not line.strip():
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 'label community'")
            out[tokens[0]] = int(tokens[1])
    return out


def cmd_auc(args) -> int:
    with open(args.scores, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] != ["u_label", "v_label"]:
            raise ValueError("scores CSV must start with u_label,v_label columns")
        methods = header[2:]
        pair_rows: dict[frozenset, list[float]] = {}
        for rec in reader:
            pair_rows[frozenset(rec[:2])] = [float(x) for x in rec[2:]]
    positives = set()
    with open(args.positives, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            a, b = line.split()[:2]
            positives.add(frozenset((a, b)))
    # evaluation universe = pairs of vertices that appear in the scores CSV;
    # removed edges whose endpoint vanished from the observed network (became
    # isolated, unrepresentable in an edge list) fall outside it
    vertices: set[str] = set()
    for k in pair_rows:
        vertices.update(k)
    outside = {p for p in positives if not p <= vertices}
    if outside:
        sys.stderr.write(f"netgaps: note: ignoring {len(outside)} positive "
                         "pair(s) outside the observed vertex set\n")
        positives -= outside
    missing = positives - set(pair_rows)
    if missing:
        raise ValueError(f"{len(missing)} positive pair(s) not present in the "
                         "scores CSV (still edges of the observed network?)")
    if not positives:
        raise ValueError("no positives among the observed vertices")
    w = csv.writer(sys.stdout)
    w.writerow(["method", "auc", "n_comparisons", "n_wins", "n_ties", "mode"])
    for j, method in enumerate(methods):
        pos = np.array([v[j] for k, v in pair_rows.items() if k in positives])
        neg = np.array([v[j] for k, v in pair_rows.items() if k not in positives])
        res = comm.auc_from_scores(pos, neg, method, mode=args.mode,
                                   sample_n=args.samples,
                                   seed=derive_seed(args.seed, method))
        w.writerow([method, repr(res.auc), res.n_comparisons, res.n_wins,
                    res.n_ties, res.mode])
    return 0


def cmd_nmi(args) -> int:
    d1 = _read_partition(args.p1)
    d2 = _read_partition(args.p2)
    if set(d1) != set(d2):
        raise ValueError("partition files cover different vertex sets")
    order = sorted(d1)
    p1 = comm.Partition.from_labels([d1[k] for k in order])
    p2 = comm.Partition.from_labels([d2[k] for k in order])
    print(repr(comm.nmi(p1, p2)))
    return 0


def cmd_experiment(args) -> int:
    if args.plan:
        plan = harness.ExperimentPlan.from_json(args.plan)
    elif args.pipeline and args.source:
        plan = harness.ExperimentPlan(source=args.source, pipeline=args.pipeline)
    else:
        raise ValueError("need --plan, or both --pipeline and --source")
    overrides = {}
    if args.pipeline:
        overrides["pipeline"] = args.pipeline
    if args.source:
        overrides["source"] = args.source
    if args.fractions:
        overrides["fractions"] = [float(x) for x in args.fractions.split(",")]
    if args.models:
        overrides["models"] = args.models.split(",")
    if args.methods:
        overrides["methods"] = args.methods.split(",")
    if args.replicas is not None:
        overrides["replicas"] = args.replicas
    if args.master_seed is not None:
        overrides["master_seed"] = args.master_seed
    if args.output_dir:
        overrides["output_dir"] = args.output_dir
    if overrides:
        plan = harness.ExperimentPlan(**{**_plan_dict(plan), **overrides})
    rows = harness.run_experiment(plan)
    os.makedirs(plan.output_dir, exist_ok=True)
    out = os.path.join(plan.output_dir, "results.csv")
    harness.write_rows(rows, out)
    print(out)
    return 0


def _plan_dict(plan: harness.ExperimentPlan) -> dict:
    return {"source": plan.source, "pipeline": plan.pipeline,
            "fractions": plan.fractions, "models": plan.models,
            "methods": plan.methods, "replicas": plan.replicas,
            "master_seed": plan.master_seed, "output_dir": plan.output_dir}


def cmd_summarize(args) -> int:
    rows = harness.read_rows(args.rows)
    summary = harness.summarize(rows)
    if args.output:
        harness.write_summary(summary, args.output)
        print(args.output)
    else:
        w = csv.writer(sys.stdout)
        w.writerow(harness.SUMMARY_HEADER)
        for s in summary:
            w.writerow([s.model, repr(float(s.fraction)), s.method, s.metric,
                        "" if s.mean is None else repr(s.mean),
                        "" if s.stderr is None else repr(s.stderr),
                        s.n_effective])
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, deg.DegradationError, gen.GenerationError) as exc:
        sys.stderr.write(f"netgaps: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
