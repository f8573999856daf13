"""End-to-end experiment pipeline.

A run turns one graph plus one configuration into a deterministic tree of
artifacts: sampled traces, per-replication estimate reports, and an
evaluation table against exact ground truth. Every random stream is derived
from the single master seed, so rerunning a configuration reproduces every
file byte for byte.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import estimate as est
from .distribution import Distribution
from .generate import parse_gen_spec, generate
from .graph import DirectedGraph, load_edge_list
from .metrics import kl_divergence, ks_d_statistic, rrmse
from .walks import (METHODS, SamplerConfig, WalkSample, load_trace,
                    sample as run_sampler, save_trace, split_halves)

logger = logging.getLogger(__name__)

PROPERTIES = ("in_degree_distribution", "out_degree_distribution",
              "graph_order", "ratio_average", "mutual_proportion")

_DISTRIBUTION_PROPERTIES = ("in_degree_distribution", "out_degree_distribution")

_DEFAULT_BUDGET_FRACTION = 0.15

_METHOD_CODES = {"mhrw": 1, "rwwj": 2}
_SPLIT_TAG = 9041


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs besides the graph itself.

    Exactly one of ``graph_path`` and ``gen`` names the graph. The step
    budget is either absolute (``budget``) or a fraction of the node count
    (``budget_fraction``, floored); when neither is given the fraction
    defaults to 0.15.
    """

    graph_path: str | None = None
    gen: str | None = None
    methods: tuple[str, ...] = ("mhrw", "rwwj")
    properties: tuple[str, ...] = PROPERTIES
    budget: int | None = None
    budget_fraction: float | None = None
    walk_prob: float = 0.85
    jump_weight: float = 10.0
    replications: int = 1
    master_seed: int = 0
    output_dir: str = "walksample-run"

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "properties", tuple(self.properties))
        if (self.graph_path is None) == (self.gen is None):
            raise ValueError("exactly one of graph_path and gen is required")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("duplicate methods")
        if not self.properties:
            raise ValueError("at least one property is required")
        for p in self.properties:
            if p not in PROPERTIES:
                raise ValueError(f"unknown property {p!r}")
        if self.budget is not None and self.budget_fraction is not None:
            raise ValueError("budget and budget_fraction are exclusive")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.budget_fraction is not None:
            if not 0.0 < self.budget_fraction <= 1.0:
                raise ValueError("budget_fraction must be in (0, 1]")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        if ("graph_order" in self.properties and "rwwj" in self.methods
                and "mhrw" not in self.methods):
            raise ValueError("rwwj order estimation pairs against mhrw "
                             "traces; add mhrw or drop graph_order")

    def resolve_budget(self, node_count: int) -> int:
        """Absolute step budget for a graph of ``node_count`` nodes."""
        if self.budget is not None:
            return self.budget
        fraction = (self.budget_fraction if self.budget_fraction is not None
                    else _DEFAULT_BUDGET_FRACTION)
        resolved = int(np.floor(fraction * node_count))
        if resolved < 1:
            raise ValueError(f"fraction {fraction} of {node_count} nodes "
                             "resolves to an empty budget")
        return resolved

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph_path,
            "gen": self.gen,
            "methods": list(self.methods),
            "properties": list(self.properties),
            "budget": self.budget,
            "budget_fraction": self.budget_fraction,
            "walk_prob": self.walk_prob,
            "jump_weight": self.jump_weight,
            "replications": self.replications,
            "master_seed": self.master_seed,
            "output_dir": self.output_dir,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExperimentConfig":
        known = {"graph": "graph_path", "gen": "gen", "methods": "methods",
                 "properties": "properties", "budget": "budget",
                 "budget_fraction": "budget_fraction",
                 "walk_prob": "walk_prob", "jump_weight": "jump_weight",
                 "replications": "replications", "master_seed": "master_seed",
                 "output_dir": "output_dir"}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        kwargs = {}
        for key, attr in known.items():
            if key in data and data[key] is not None:
                value = data[key]
                if attr in ("methods", "properties"):
                    value = tuple(value)
                kwargs[attr] = value
        return cls(**kwargs)


def derive_walk_seed(master_seed: int, method: str, rep: int) -> int:
    """Walk seed for one (method, replication) cell, folded from the master."""
    ss = np.random.SeedSequence((master_seed, _METHOD_CODES[method], rep))
    return int(ss.generate_state(1, np.uint64)[0])


def derive_split_seed(walk_seed: int) -> int:
    """Half-split seed folded from a trace's own walk seed, so estimation
    from trace files alone stays deterministic."""
    ss = np.random.SeedSequence((walk_seed, _SPLIT_TAG))
    return int(ss.generate_state(1, np.uint64)[0])


def load_graph(config: ExperimentConfig) -> DirectedGraph:
    """Materialize the graph a config points at."""
    if config.gen is not None:
        return generate(parse_gen_spec(config.gen))
    return load_edge_list(config.graph_path)


# -- commands ------------------------------------------------------------------


def cmd_stats(graph: DirectedGraph, out_dir) -> dict:
    """Write ground-truth summary files; returns the stats dict."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = graph.stats()
    _write_json(out_dir / "graph_stats.json", stats)
    for direction in ("in", "out"):
        _write_cdf_csv(out_dir / f"truth_{direction}_degree_cdf.csv",
                       graph.degree_distribution(direction))
    return stats


def cmd_sample(graph: DirectedGraph, config: ExperimentConfig,
               out_dir) -> list[Path]:
    """Run every (method, replication) walk and save one trace file each."""
    out_dir = Path(out_dir)
    trace_dir = out_dir / "traces"
    trace_dir.mkdir(parents=True, exist_ok=True)
    budget = config.resolve_budget(graph.node_count)
    paths = []
    for method in config.methods:
        for rep in range(config.replications):
            cfg = SamplerConfig(budget=budget,
                                walk_prob=config.walk_prob,
                                jump_weight=config.jump_weight,
                                rng_seed=derive_walk_seed(
                                    config.master_seed, method, rep))
            walk = run_sampler(graph, method, cfg)
            path = trace_dir / f"{method}_rep{rep:03d}.trace"
            save_trace(walk, graph, path)
            paths.append(path)
    manifest = {
        "config": config.to_json_dict(),
        "resolved_budget": budget,
        "graph_hash": graph.graph_hash(),
        "traces": [p.name for p in paths],
    }
    _write_json(out_dir / "run_manifest.json", manifest)
    return paths


def cmd_estimate(graph: DirectedGraph, trace_paths, properties,
                 out_dir) -> list[est.EstimateReport]:
    """Estimate ``properties`` from saved traces; one report per
    (property, method, replication).

    Traces are grouped by method from their headers and paired across
    methods by position, which is what the order estimator of the jump
    walk needs. Estimator failures (for example, an empty half-split
    overlap) are recorded in the report rather than aborting the batch.
    """
    for prop in properties:
        if prop not in PROPERTIES:
            raise ValueError(f"unknown property {prop!r}")
    out_dir = Path(out_dir)
    report_dir = out_dir / "reports"
    report_dir.mkdir(parents=True, exist_ok=True)

    by_method: dict[str, list[WalkSample]] = {m: [] for m in METHODS}
    for path in sorted(Path(p) for p in trace_paths):
        walk = load_trace(path, graph)
        by_method[walk.method].append(walk)

    reports = []
    for method in METHODS:
        for rep, walk in enumerate(by_method[method]):
            paired = (by_method["mhrw"][rep]
                      if method == "rwwj" and rep < len(by_method["mhrw"])
                      else None)
            for prop in properties:
                report = _estimate_one(graph, walk, prop, rep, paired)
                if report is not None:
                    reports.append(report)

    for report in reports:
        stem = f"{report.property_name}_{report.method}_rep{report.rep:03d}"
        _write_json(report_dir / f"{stem}.json", report.to_json_dict())
        if report.dist is not None:
            _write_cdf_csv(report_dir / f"{stem}.cdf.csv", report.dist)
    return reports


def _estimate_one(graph, walk, prop, rep, paired_mhrw):
    report = est.EstimateReport(
        property_name=prop, method=walk.method, rep=rep,
        sampler={"budget": walk.config.budget,
                 "walk_prob": walk.config.walk_prob,
                 "jump_weight": walk.config.jump_weight,
                 "rng_seed": walk.config.rng_seed},
        graph_hash=walk.graph_hash)
    try:
        if prop in _DISTRIBUTION_PROPERTIES:
            direction = "in" if prop.startswith("in_") else "out"
            if walk.method == "mhrw":
                report.dist = est.mh_degree_distribution(walk, graph, direction)
            else:
                report.dist = est.rw_degree_distribution(walk, graph, direction)
            report.truth_dist = graph.degree_distribution(direction)
        elif prop == "graph_order":
            if walk.method == "mhrw":
                split_seed = derive_split_seed(walk.config.rng_seed)
                first, second = split_halves(walk, split_seed)
                report.details = {"split_seed": split_seed,
                                  "set1": len(first), "set2": len(second),
                                  "overlap": len(first & second)
                                  if first and second else 0}
                report.value = est.capture_recapture_order(first, second)
            else:
                if paired_mhrw is None:
                    logger.warning("no paired mhrw trace for rwwj rep %d; "
                                   "skipping graph_order", rep)
                    return None
                first = set(map(int, paired_mhrw.distinct_nodes()))
                collisions = int(np.isin(walk.trace,
                                         paired_mhrw.distinct_nodes()).sum())
                report.details = {"set1": len(first),
                                  "trace_len": int(walk.trace.size),
                                  "collisions": collisions}
                report.value = est.cross_collision_order(first, walk.trace)
            report.truth_value = float(graph.node_count)
        elif prop == "ratio_average":
            result = est.ratio_average_estimate(walk, graph)
            report.value = result.value
            report.details = {"skipped_steps": result.excluded}
            report.truth_value = graph.ratio_average().value
        elif prop == "mutual_proportion":
            report.value = est.mutual_proportion_estimate(walk, graph)
            report.details = {"collected_edges": int(walk.collected_edges.shape[0])}
            report.truth_value = graph.mutual_proportion()
    except ValueError as exc:
        report.value = None
        report.dist = None
        report.details = dict(report.details, error=str(exc))
        return report
    if report.dist is not None and report.truth_dist is not None:
        report.errors = {
            "d_statistic": ks_d_statistic(report.dist, report.truth_dist),
            "kl_divergence": kl_divergence(report.dist, report.truth_dist),
        }
    elif report.value is not None and report.truth_value not in (None, 0.0):
        report.errors = {"rrmse": rrmse([report.value], report.truth_value)}
    return report


_EVAL_COLUMNS = ("property", "method", "reps", "failed", "mean_estimate",
                 "truth", "rrmse", "mean_ks_d", "mean_kl")


def cmd_evaluate(reports, out_path) -> list[dict]:
    """Aggregate reports into one evaluation row per (property, method).

    Scalar properties aggregate to the mean estimate and the relative RMSE
    over replications; distribution properties aggregate to mean KS D and
    mean smoothed KL against the truth distribution. Failed replications
    are counted and excluded.
    """
    groups: dict[tuple[str, str], list] = {}
    for report in reports:
        groups.setdefault((report.property_name, report.method),
                          []).append(report)

    rows = []
    for (prop, method) in sorted(groups):
        members = groups[(prop, method)]
        row = {"property": prop, "method": method, "reps": len(members),
               "failed": sum(1 for m in members
                             if m.value is None and m.dist is None),
               "mean_estimate": "", "truth": "", "rrmse": "",
               "mean_ks_d": "", "mean_kl": ""}
        if prop in _DISTRIBUTION_PROPERTIES:
            ok = [m for m in members if m.dist is not None]
            if any(m.truth_dist is None for m in ok):
                raise ValueError(f"missing ground truth for {prop}/{method}")
            if ok:
                row["mean_ks_d"] = _fmt(np.mean(
                    [ks_d_statistic(m.dist, m.truth_dist) for m in ok]))
                row["mean_kl"] = _fmt(np.mean(
                    [kl_divergence(m.dist, m.truth_dist) for m in ok]))
        else:
            ok = [m for m in members if m.value is not None]
            truth = next((m.truth_value for m in members
                          if m.truth_value is not None), None)
            if ok and truth is None:
                raise ValueError(f"missing ground truth for {prop}/{method}")
            if ok:
                row["mean_estimate"] = _fmt(np.mean([m.value for m in ok]))
            if truth is not None:
                row["truth"] = _fmt(truth)
                # rrmse is undefined at zero truth; leave the cell blank.
                if ok and truth != 0.0:
                    row["rrmse"] = _fmt(rrmse([m.value for m in ok], truth))
        rows.append(row)

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="", encoding="ascii") as fh:
        writer = csv.DictWriter(fh, fieldnames=_EVAL_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return rows


def run_experiment(config: ExperimentConfig) -> dict:
    """Full pipeline: graph, stats, traces, reports, evaluation table.

    Returns a summary dict with the stats, the reports, the evaluation
    rows, and the output directory.
    """
    out_dir = Path(config.output_dir)
    graph = load_graph(config)
    stats = cmd_stats(graph, out_dir)
    trace_paths = cmd_sample(graph, config, out_dir)
    reports = cmd_estimate(graph, trace_paths, config.properties, out_dir)
    rows = cmd_evaluate(reports, out_dir / "evaluation.csv")
    return {"stats": stats, "reports": reports, "evaluation": rows,
            "output_dir": str(out_dir)}


# -- helpers -------------------------------------------------------------------


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_json(path: Path, payload) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="ascii")


def _write_cdf_csv(path: Path, dist: Distribution) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(("key", "mass", "cumulative"))
        for key, mass, cum in dist.cdf_rows():
            writer.writerow((key, repr(mass), repr(cum)))
