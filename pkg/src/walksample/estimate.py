"""Property estimators over walk samples.

The Metropolis sampler targets the uniform node distribution, so its trace
averages estimate population means directly. The jump-weighted walk visits
node v in proportion to in-degree(v) + jump_weight, so its estimators
reweight each visit by the reciprocal of that rate; the normalizer cancels
in all ratios, leaving only known quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .distribution import Distribution
from .graph import DirectedGraph, RatioAverage
from .walks import WalkSample


@dataclass(frozen=True)
class NodalFunction:
    """A per-node quantity whose population mean is being estimated.

    Values may be undefined (NaN) on some nodes; estimators skip those
    evaluations and renormalize over the defined ones.
    """

    kind: str
    degree_key: int | None = None
    direction: str | None = None
    fn: Callable | None = None
    description: str = ""

    @classmethod
    def degree_indicator(cls, key: int, direction: str = "in") -> "NodalFunction":
        """1.0 on nodes whose degree equals ``key``, else 0.0."""
        if direction not in ("in", "out"):
            raise ValueError("direction must be 'in' or 'out'")
        return cls(kind="degree_indicator", degree_key=int(key),
                   direction=direction,
                   description=f"[{direction}-degree == {key}]")

    @classmethod
    def ratio_value(cls) -> "NodalFunction":
        """In/out degree ratio; undefined on nodes without out-edges."""
        return cls(kind="ratio_value", description="in/out degree ratio")

    @classmethod
    def constant_one(cls) -> "NodalFunction":
        """1.0 everywhere; useful as a sanity probe of the weighting."""
        return cls(kind="constant_one", description="1")

    @classmethod
    def custom(cls, fn: Callable[[DirectedGraph, int], float],
               description: str = "custom") -> "NodalFunction":
        """Arbitrary per-node function; return NaN to mark undefined."""
        return cls(kind="custom", fn=fn, description=description)

    def node_values(self, graph: DirectedGraph) -> np.ndarray:
        """Evaluate on every node; NaN marks undefined entries."""
        if self.kind == "degree_indicator":
            deg = (graph.in_degrees if self.direction == "in"
                   else graph.out_degrees)
            return (deg == self.degree_key).astype(float)
        if self.kind == "ratio_value":
            return graph.ratio_values()
        if self.kind == "constant_one":
            return np.ones(graph.node_count)
        if self.kind == "custom":
            return np.array([float(self.fn(graph, v))
                             for v in range(graph.node_count)])
        raise ValueError(f"unknown nodal function kind {self.kind!r}")


def _require_method(sample: WalkSample, method: str):
    if sample.method != method:
        raise ValueError(f"estimator expects a {method} sample, "
                         f"got {sample.method}")


def _visit_weights(sample: WalkSample, graph: DirectedGraph) -> np.ndarray:
    """Per-step correction weights for the jump-weighted walk."""
    alpha = sample.config.jump_weight
    return 1.0 / (graph.in_degrees[sample.trace].astype(float) + alpha)


# -- means and distributions ---------------------------------------------------


def mh_mean(sample: WalkSample, graph: DirectedGraph,
            fn: NodalFunction) -> float:
    """Population mean of ``fn`` from a Metropolis trace: the plain average
    over defined evaluations.

    Raises:
        ValueError: when ``fn`` is undefined on every visited step.
    """
    _require_method(sample, "mhrw")
    vals = fn.node_values(graph)[sample.trace]
    defined = ~np.isnan(vals)
    if not defined.any():
        raise ValueError("function undefined on every visited node")
    return float(vals[defined].mean())


def rw_ratio_estimate(sample: WalkSample, graph: DirectedGraph,
                      fn: NodalFunction) -> float:
    """Population mean of ``fn`` from a jump-weighted trace.

    Each visit contributes with weight 1 / (in-degree + jump_weight);
    undefined evaluations drop out of numerator and normalizer alike.
    """
    _require_method(sample, "rwwj")
    vals = fn.node_values(graph)[sample.trace]
    weights = _visit_weights(sample, graph)
    defined = ~np.isnan(vals)
    if not defined.any():
        raise ValueError("function undefined on every visited node")
    numer = float((vals[defined] * weights[defined]).sum())
    denom = float(weights[defined].sum())
    return numer / denom


def mh_degree_distribution(sample: WalkSample, graph: DirectedGraph,
                           direction: str = "in") -> Distribution:
    """Degree distribution estimate from a Metropolis trace."""
    _require_method(sample, "mhrw")
    deg = graph._degree_array(direction)[sample.trace]
    return Distribution.from_counts(np.bincount(deg))


def rw_degree_distribution(sample: WalkSample, graph: DirectedGraph,
                           direction: str = "in") -> Distribution:
    """Degree distribution estimate from a jump-weighted trace."""
    _require_method(sample, "rwwj")
    deg = graph._degree_array(direction)[sample.trace]
    return Distribution.from_weights(deg, _visit_weights(sample, graph))


def ratio_average_estimate(sample: WalkSample,
                           graph: DirectedGraph) -> RatioAverage:
    """Average in/out degree ratio, dispatched on the sample's method.

    Returns the estimate together with the number of skipped trace steps
    (visits to nodes whose ratio is undefined).
    """
    fn = NodalFunction.ratio_value()
    vals = fn.node_values(graph)[sample.trace]
    skipped = int(np.isnan(vals).sum())
    if sample.method == "mhrw":
        value = mh_mean(sample, graph, fn)
    else:
        value = rw_ratio_estimate(sample, graph, fn)
    return RatioAverage(value, skipped)


# -- graph order ---------------------------------------------------------------


def capture_recapture_order(first: set[int], second: set[int]) -> float:
    """Order estimate |S1| * |S2| / |S1 & S2| from two node sets.

    Raises:
        ValueError: on an empty set or an empty intersection, which leave
            the estimate undefined.
    """
    if not first or not second:
        raise ValueError("capture-recapture needs two non-empty node sets")
    overlap = len(first & second)
    if overlap == 0:
        raise ValueError("capture-recapture sets do not intersect")
    return len(first) * len(second) / overlap


def cross_collision_order(first: set[int], second_trace) -> float:
    """Order estimate from a node set and a second raw trace.

    Counts collisions of trace entries (with multiplicity) against the
    first set: |S1| * len(trace) / collisions.

    Raises:
        ValueError: on empty inputs or zero collisions.
    """
    second_trace = np.asarray(second_trace)
    if not first or second_trace.size == 0:
        raise ValueError("cross-collision needs a non-empty set and trace")
    members = np.fromiter(first, dtype=np.int64, count=len(first))
    collisions = int(np.isin(second_trace, members).sum())
    if collisions == 0:
        raise ValueError("no collisions between the set and the trace")
    return len(first) * int(second_trace.size) / collisions


# -- mutual proportion ---------------------------------------------------------


def _mhrw_edge_probs(graph, src, dst, walk_prob):
    n = graph.node_count
    base = (1.0 - walk_prob) / n
    deg_src = graph.out_degrees[src].astype(float)
    deg_dst = graph.out_degrees[dst].astype(float)
    with np.errstate(divide="ignore"):
        score_src = base + walk_prob / deg_src
        score_dst = base + walk_prob / deg_dst
    accept = np.minimum(score_dst / score_src, 1.0)
    accept[deg_dst == 0.0] = 1.0
    return (walk_prob / deg_src + base) * accept


def _rwwj_edge_probs(graph, src, dst, jump_weight):
    n = graph.node_count
    deg_src = graph.out_degrees[src].astype(float)
    return (jump_weight / n + 1.0) / (deg_src + jump_weight)


def _mutual_from_edges(graph, src, dst, source_weight, edge_probs, prob_arg):
    """Shared mutual-proportion aggregation.

    Each collected edge (i -> j) carries weight
    w(i) * q(i -> j) + w(j) * q(j -> i), where the reverse term is present
    only when the reverse edge exists in the graph. The estimate is the
    weight share of reciprocated edges.
    """
    forward = source_weight(src) * edge_probs(graph, src, dst, prob_arg)
    reciprocated = graph.has_edges(dst, src)
    weight = forward.copy()
    if reciprocated.any():
        rev_src = dst[reciprocated]
        rev_dst = src[reciprocated]
        weight[reciprocated] += (source_weight(rev_src)
                                 * edge_probs(graph, rev_src, rev_dst, prob_arg))
    total = float(weight.sum())
    return float(weight[reciprocated].sum()) / total


def mutual_proportion_mhrw(sample: WalkSample, graph: DirectedGraph) -> float:
    """Share of reciprocated edges among those collected by a Metropolis walk.

    Edges are weighted by their stationary traversal probability under the
    uniform node law, which corrects for unequal edge discovery rates.

    Raises:
        ValueError: when the sample collected no edges.
    """
    _require_method(sample, "mhrw")
    edges = sample.collected_edges
    if edges.shape[0] == 0:
        raise ValueError("sample collected no edges")
    return _mutual_from_edges(
        graph, edges[:, 0].astype(np.int64), edges[:, 1].astype(np.int64),
        source_weight=lambda nodes: np.full(nodes.size, 1.0 / graph.node_count),
        edge_probs=_mhrw_edge_probs, prob_arg=sample.config.walk_prob)


def mutual_proportion_rwwj(sample: WalkSample, graph: DirectedGraph) -> float:
    """Share of reciprocated edges among those collected by the jump walk.

    Node weights follow the reciprocal visit rate 1 / (in-degree +
    jump_weight), normalized over the distinct visited nodes; the
    normalizer cancels in the final share.

    Raises:
        ValueError: when the sample collected no edges.
    """
    _require_method(sample, "rwwj")
    edges = sample.collected_edges
    if edges.shape[0] == 0:
        raise ValueError("sample collected no edges")
    alpha = sample.config.jump_weight
    rates = graph.in_degrees.astype(float) + alpha
    normalizer = float((1.0 / rates[sample.distinct_nodes()]).sum())

    def node_weight(nodes):
        return 1.0 / rates[nodes] / normalizer

    return _mutual_from_edges(
        graph, edges[:, 0].astype(np.int64), edges[:, 1].astype(np.int64),
        source_weight=node_weight,
        edge_probs=_rwwj_edge_probs, prob_arg=alpha)


def mutual_proportion_estimate(sample: WalkSample,
                               graph: DirectedGraph) -> float:
    """Dispatch to the mutual-proportion estimator matching the sample."""
    if sample.method == "mhrw":
        return mutual_proportion_mhrw(sample, graph)
    return mutual_proportion_rwwj(sample, graph)


# -- reports -------------------------------------------------------------------


@dataclass
class EstimateReport:
    """One estimator output with enough provenance to reproduce it.

    ``value`` is set for scalar properties, ``dist`` for distribution
    properties; exactly one is non-None. Truth fields are filled when the
    full graph is available as an oracle.
    """

    property_name: str
    method: str
    rep: int
    value: float | None = None
    dist: Distribution | None = None
    truth_value: float | None = None
    truth_dist: Distribution | None = None
    errors: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    sampler: dict = field(default_factory=dict)
    graph_hash: str = ""

    def to_json_dict(self) -> dict:
        def encode_dist(dist):
            if dist is None:
                return None
            return {str(k): v for k, v in sorted(dist.masses.items())}

        return {
            "property": self.property_name,
            "method": self.method,
            "rep": self.rep,
            "value": self.value,
            "distribution": encode_dist(self.dist),
            "truth_value": self.truth_value,
            "truth_distribution": encode_dist(self.truth_dist),
            "errors": self.errors,
            "details": self.details,
            "sampler": self.sampler,
            "graph_hash": self.graph_hash,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EstimateReport":
        def decode_dist(payload):
            if payload is None:
                return None
            return Distribution({int(k): v for k, v in payload.items()})

        return cls(property_name=data["property"], method=data["method"],
                   rep=data["rep"], value=data["value"],
                   dist=decode_dist(data["distribution"]),
                   truth_value=data["truth_value"],
                   truth_dist=decode_dist(data["truth_distribution"]),
                   errors=data.get("errors", {}),
                   details=data.get("details", {}),
                   sampler=data.get("sampler", {}),
                   graph_hash=data.get("graph_hash", ""))
