"""Reproducible experiment driver: generation -> degradation -> scoring or
detection -> metrics, swept over observed-edge fractions and seeded replicas.

Replica seeds come from hashing (master, component, model, fraction, replica),
so runs are byte-reproducible and adding replicas never reshuffles existing
ones. Rows are emitted in (model, fraction, method, replica) order; skipped
replicas stay in the output flagged with ``n_effective = 0`` instead of being
silently dropped.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np

from . import community as comm
from . import degrade as deg
from . import generators as gen
from . import linkpred as lp
from .graph import Graph, is_connected, load_edge_list
from .seeds import derive_seed

DEFAULT_FRACTIONS = [round(1.0 - 0.05 * i, 2) for i in range(1, 11)]  # 0.95..0.50
PREDICTION = "prediction"
COMMUNITY = "community"
CSV_HEADER = ["model", "fraction", "method", "replica", "seed", "metric",
              "value", "n_effective"]
OUTPUT_DIR_ENV = "NETGAPS_OUTPUT_DIR"

_DETECTORS = {
    "louvain": comm.louvain,
    "labelprop": comm.label_propagation,
}

_SOURCE_RETRIES = 100


class PlanError(ValueError):
    """Raised for malformed experiment plans."""


@dataclass
class ExperimentPlan:
    source: str | dict
    pipeline: str
    fractions: list[float] = field(default_factory=lambda: list(DEFAULT_FRACTIONS))
    models: list[str] = field(default_factory=lambda: list(deg.MODEL_KINDS))
    methods: list[str] = field(default_factory=list)
    replicas: int = 1
    master_seed: int = 0
    output_dir: str = ""

    def __post_init__(self):
        if self.pipeline not in (PREDICTION, COMMUNITY):
            raise PlanError(f"unknown pipeline {self.pipeline!r}")
        if not self.fractions:
            raise PlanError("fractions must be non-empty")
        for f in self.fractions:
            if not 0.0 < f <= 1.0:
                raise PlanError(f"fraction {f} outside (0, 1]")
        if any(b >= a for a, b in zip(self.fractions, self.fractions[1:])):
            raise PlanError("fractions must be strictly decreasing")
        if self.replicas < 1:
            raise PlanError("replicas must be at least 1")
        if not self.methods:
            self.methods = (list(lp.SCORER_IDS) if self.pipeline == PREDICTION
                            else list(_DETECTORS))
        if self.pipeline == PREDICTION:
            for mdl in self.models:
                if mdl not in deg.MODEL_KINDS:
                    raise PlanError(f"unknown degradation model {mdl!r}")
            for meth in self.methods:
                if meth not in lp.available_scorers():
                    raise PlanError(f"unknown scorer {meth!r}")
        else:
            for meth in self.methods:
                if meth not in _DETECTORS:
                    raise PlanError(f"unknown detector {meth!r}")
        if not self.output_dir:
            self.output_dir = os.environ.get(OUTPUT_DIR_ENV, ".")

    @classmethod
    def from_json(cls, path) -> "ExperimentPlan":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        unknown = set(raw) - {"source", "pipeline", "fractions", "models",
                              "methods", "replicas", "master_seed", "output_dir"}
        if unknown:
            raise PlanError(f"unknown plan fields: {sorted(unknown)}")
        if "source" not in raw or "pipeline" not in raw:
            raise PlanError("plan needs at least 'source' and 'pipeline'")
        return cls(**raw)


@dataclass(frozen=True)
class ResultRow:
    model: str
    fraction: float
    method: str
    replica: int
    seed: int
    metric: str
    value: float | None    # None = replica skipped (n_effective 0)
    n_effective: int


# -- source materialization -----------------------------------------------------


def _needs_connected(plan: ExperimentPlan) -> bool:
    return plan.pipeline == COMMUNITY or deg.CRAWLED in plan.models


def _source_graph(plan: ExperimentPlan, replica: int):
    """Graph and (for planted sources) ground-truth partition of a replica.

    File sources are fixed across replicas; synthetic sources are regenerated
    per replica, retrying with derived sub-seeds until connected when the
    pipeline requires it.
    """
    if isinstance(plan.source, str):
        g = load_edge_list(plan.source)
        if _needs_connected(plan) and not is_connected(g):
            raise deg.DegradationError(
                f"source {plan.source} is disconnected but the plan requires "
                "a connected network")
        return g, None
    if not isinstance(plan.source, dict) or len(plan.source) != 1:
        raise PlanError("source must be a path or one of {'er': {...}} / {'lfr': {...}}")
    (kind, params), = plan.source.items()
    for attempt in range(_SOURCE_RETRIES):
        seed = derive_seed(plan.master_seed, "source", replica, attempt)
        if kind == "er":
            g = gen.generate_er(gen.ErParams(
                n=int(params["n"]), mean_degree=float(params["k_avg"]), seed=seed))
            truth = None
        elif kind == "lfr":
            pg = gen.generate_lfr(gen.LfrParams(
                n=int(params["n"]), mean_degree=float(params["k_avg"]),
                max_degree=int(params["k_max"]), degree_exponent=float(params["tau1"]),
                community_exponent=float(params["tau2"]), mixing=float(params["mu"]),
                c_min=int(params["c_min"]), c_max=int(params["c_max"]), seed=seed))
            g, truth = pg.graph, pg.communities
        else:
            raise PlanError(f"unknown synthetic source {kind!r}")
        if not _needs_connected(plan) or is_connected(g):
            return g, truth
    raise gen.GenerationError(
        f"no connected {kind} network after {_SOURCE_RETRIES} attempts "
        f"(replica {replica})")


# -- pipelines ------------------------------------------------------------------


_DEGRADERS = {
    deg.CRAWLED: lambda g, t, s: deg.crawl(g, t, s),
    deg.RANDOM: lambda g, t, s: deg.random_delete(g, t, s, keep_connected=False),
    deg.LIMITED: lambda g, t, s: deg.limited_degree_delete(g, t, s,
                                                           keep_connected=False),
}


def run_prediction_pipeline(plan: ExperimentPlan) -> list[ResultRow]:
    """Degrade, score every candidate pair, and report exact AUC per method."""
    if plan.pipeline != PREDICTION:
        raise PlanError("plan.pipeline must be 'prediction'")
    rows: list[ResultRow] = []
    for replica in range(plan.replicas):
        g, _ = _source_graph(plan, replica)
        for fraction in plan.fractions:
            target = int(round(fraction * g.num_edges))
            for model in plan.models:
                seed = derive_seed(plan.master_seed, "degrade", model,
                                   fraction, replica)
                rows.extend(_prediction_rows(plan, g, model, fraction, target,
                                             replica, seed))
    return _sorted_rows(plan, rows)


def _prediction_rows(plan, g, model, fraction, target, replica, seed):
    def skipped():
        return [ResultRow(model, fraction, meth, replica, seed, "auc", None, 0)
                for meth in plan.methods]

    if target == g.num_edges or target <= 0:
        return skipped()  # nothing removed (or nothing left): no positives
    try:
        dn = _DEGRADERS[model](g, target, seed)
    except deg.DegradationError:
        return skipped()
    positives = dn.removed_in_observed_ids()
    if positives.shape[0] == 0:
        return skipped()
    pairs = lp.candidate_pairs(dn.observed)
    if pairs.shape[0] <= positives.shape[0]:
        return skipped()  # no negatives left to compare against
    scored = lp.score_all(dn.observed, pairs, plan.methods)
    out = []
    for meth in plan.methods:
        res = comm.auc(scored, positives, meth, mode="exact")
        out.append(ResultRow(model, fraction, meth, replica, seed, "auc",
                             res.auc, 1))
    return out


_COMMUNITY_MODELS = ("original", deg.INDUCED, deg.CRAWLED, deg.RANDOM, deg.LIMITED)


def run_community_pipeline(plan: ExperimentPlan) -> list[ResultRow]:
    """Build the connected suite per fraction and replica, run each detector
    on all four networks plus the original, and compare to the truth."""
    if plan.pipeline != COMMUNITY:
        raise PlanError("plan.pipeline must be 'community'")
    rows: list[ResultRow] = []
    fixed_source = isinstance(plan.source, str)
    fixed_truth = None
    for replica in range(plan.replicas):
        g, truth = _source_graph(plan, replica)
        if truth is None:
            # one "real" partition per network: fixed sources share it, while
            # regenerated sources need one per replica graph
            if fixed_source:
                if fixed_truth is None:
                    fixed_truth = comm.reference_partition(
                        g, derive_seed(plan.master_seed, "reference"))
                truth = fixed_truth
            else:
                truth = comm.reference_partition(
                    g, derive_seed(plan.master_seed, "reference", replica))
            planted = False
        else:
            planted = True
        for fraction in plan.fractions:
            target = int(round(fraction * g.num_edges))
            seed = derive_seed(plan.master_seed, "suite", fraction, replica)
            try:
                suite = deg.make_community_suite(g, target, seed)
            except deg.DegradationError:
                for detector in plan.methods:
                    for model in _COMMUNITY_MODELS:
                        rows.append(ResultRow(model, fraction, detector, replica,
                                              seed, "nmi", None, 0))
                continue
            nets = suite.degraded()
            for detector in plan.methods:
                for model in _COMMUNITY_MODELS:
                    det_seed = derive_seed(plan.master_seed, "detect", model,
                                           detector, fraction, replica)
                    if model == "original":
                        observed, vmap = g, None
                    else:
                        observed = nets[model].observed
                        vmap = nets[model].vertex_map
                    part = _DETECTORS[detector](observed, det_seed)
                    truth_here = truth if vmap is None else truth.restrict(vmap)
                    rows.append(ResultRow(model, fraction, detector, replica, seed,
                                          "nmi", comm.nmi(part, truth_here), 1))
                    rows.append(ResultRow(model, fraction, detector, replica, seed,
                                          "q", comm.modularity(observed, part), 1))
            if planted:
                for model in (deg.CRAWLED, deg.RANDOM, deg.LIMITED):
                    counts = deg.classify_removed(nets[model], truth)
                    for metric, value in (
                            ("removed_intra", counts.removed_intra),
                            ("removed_inter", counts.removed_inter),
                            ("remaining_inter", counts.remaining_inter)):
                        rows.append(ResultRow(model, fraction, "-", replica, seed,
                                              metric, float(value), 1))
    return _sorted_rows(plan, rows)


def _sorted_rows(plan: ExperimentPlan, rows: list[ResultRow]) -> list[ResultRow]:
    model_order = {m: i for i, m in enumerate(
        plan.models if plan.pipeline == PREDICTION else _COMMUNITY_MODELS)}
    frac_order = {f: i for i, f in enumerate(plan.fractions)}
    meth_order = {m: i for i, m in enumerate(plan.methods)}
    meth_order.setdefault("-", len(meth_order))
    metric_order = {"auc": 0, "nmi": 0, "q": 1, "removed_intra": 2,
                    "removed_inter": 3, "remaining_inter": 4}
    rows.sort(key=lambda r: (model_order[r.model], frac_order[r.fraction],
                             meth_order[r.method], r.replica,
                             metric_order[r.metric]))
    return rows


def run_experiment(plan: ExperimentPlan) -> list[ResultRow]:
    if plan.pipeline == PREDICTION:
        return run_prediction_pipeline(plan)
    return run_community_pipeline(plan)


# -- result I/O and aggregation ----------------------------------------------------


def write_rows(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r.model, repr(float(r.fraction)), r.method, r.replica,
                        r.seed, r.metric,
                        "" if r.value is None else repr(float(r.value)),
                        r.n_effective])


def read_rows(path) -> list[ResultRow]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected results header: {header}")
        for rec in reader:
            model, fraction, method, replica, seed, metric, value, n_eff = rec
            out.append(ResultRow(model, float(fraction), method, int(replica),
                                 int(seed), metric,
                                 None if value == "" else float(value),
                                 int(n_eff)))
    return out


@dataclass(frozen=True)
class SummaryRow:
    model: str
    fraction: float
    method: str
    metric: str
    mean: float | None
    stderr: float | None
    n_effective: int


SUMMARY_HEADER = ["model", "fraction", "method", "metric", "mean", "stderr",
                  "n_effective"]


def summarize(rows) -> list[SummaryRow]:
    """Mean and standard error per (model, fraction, method, metric).

    Skipped rows are excluded from the statistics but the group still appears
    with its effective replica count.
    """
    groups: dict[tuple, list[float | None]] = {}
    for r in rows:
        groups.setdefault((r.model, r.fraction, r.method, r.metric), []).append(
            r.value if r.n_effective else None)
    out = []
    for (model, fraction, method, metric), values in sorted(
            groups.items(), key=lambda kv: (kv[0][0], -kv[0][1], kv[0][2], kv[0][3])):
        good = np.array([v for v in values if v is not None], dtype=np.float64)
        if good.size == 0:
            out.append(SummaryRow(model, fraction, method, metric, None, None, 0))
            continue
        mean = float(good.mean())
        stderr = float(good.std(ddof=1) / np.sqrt(good.size)) if good.size > 1 else 0.0
        out.append(SummaryRow(model, fraction, method, metric, mean, stderr,
                              int(good.size)))
    return out


def write_summary(summary, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_HEADER)
        for s in summary:
            w.writerow([s.model, repr(float(s.fraction)), s.method, s.metric,
                        "" if s.mean is None else repr(s.mean),
                        "" if s.stderr is None else repr(s.stderr),
                        s.n_effective])
