"""Budgeted random-walk samplers over directed graphs.

Two samplers share one configuration and output shape:

* ``mhrw_sample``: Metropolis-adjusted walk whose proposals mix uniform
  out-neighbors with uniform jumps; targets the uniform node distribution.
* ``rwwj_sample``: random walk that jumps to a uniform node with weight
  ``jump_weight`` against the current out-degree; visits nodes roughly in
  proportion to degree plus jump weight.

Both consume exactly ``budget`` steps, write every visited node into the
trace (repeats included), and are bit-reproducible from ``rng_seed`` alone,
with or without the optional compiled kernels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _kernels
from ._kernels import KIND_JUMP, KIND_REJECTION, KIND_WALK
from .graph import DirectedGraph

_CHUNK_STEPS = 1 << 16

_KIND_WORDS = {KIND_WALK: "walk", KIND_JUMP: "jump", KIND_REJECTION: "rejection"}
_WORD_KINDS = {w: k for k, w in _KIND_WORDS.items()}

METHODS = ("mhrw", "rwwj")


@dataclass(frozen=True)
class SamplerConfig:
    """Shared sampler settings.

    Attributes:
        budget: number of steps to spend; every step consumes one unit,
            including declined Metropolis proposals.
        walk_prob: probability of proposing a walk move (mhrw only).
        jump_weight: virtual jump mass added to each node's out-degree
            (rwwj only).
        rng_seed: seed of the walk's random stream.
        seed_node: external id of the start node, or None to draw it
            uniformly from the node set.
    """

    budget: int
    walk_prob: float = 0.85
    jump_weight: float = 10.0
    rng_seed: int = 0
    seed_node: int | None = None

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if not 0.0 < self.walk_prob <= 1.0:
            raise ValueError("walk_prob must be in (0, 1]")
        if self.jump_weight < 0.0:
            raise ValueError("jump_weight must be non-negative")


@dataclass
class WalkSample:
    """One sampler run: the visited trace plus everything needed to replay it.

    ``trace`` holds internal node indices, one per step; ``kinds`` holds the
    matching step codes from ``_kernels``. The start node is not part of the
    trace and consumes no budget.
    """

    method: str
    config: SamplerConfig
    start_node: int
    trace: np.ndarray
    kinds: np.ndarray
    graph_hash: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.trace.shape != (self.config.budget,):
            raise ValueError("trace length must equal the budget")
        if self.kinds.shape != self.trace.shape:
            raise ValueError("kinds and trace must align")

    def from_nodes(self) -> np.ndarray:
        """Node occupied before each step: start node, then trace[:-1]."""
        return np.concatenate(([self.start_node],
                               self.trace[:-1])).astype(np.int32)

    def distinct_nodes(self) -> np.ndarray:
        """Sorted unique internal indices visited by the trace."""
        return np.unique(self.trace)

    @cached_property
    def collected_edges(self) -> np.ndarray:
        """Unique edges traversed by walk steps, as an (m, 2) array.

        Only steps of kind walk contribute; jump landings and rejections
        reveal no edge. Sorted by (src, dst).
        """
        mask = self.kinds == KIND_WALK
        if not mask.any():
            return np.empty((0, 2), dtype=np.int32)
        pairs = np.stack([self.from_nodes()[mask], self.trace[mask]], axis=1)
        return np.unique(pairs, axis=0)

    def step_counts(self) -> dict[str, int]:
        """Number of steps of each kind."""
        return {word: int((self.kinds == code).sum())
                for code, word in _KIND_WORDS.items()}


def mhrw_sample(graph: DirectedGraph, config: SamplerConfig) -> WalkSample:
    """Run the Metropolis walk and return its sample.

    A proposal along an existing edge (u -> v) is accepted with probability
    min(s(v) / s(u), 1) where s(x) = (1 - walk_prob) / N +
    walk_prob / out_degree(x), treating dangling proposal targets as always
    accepted. Proposals onto non-edges are accepted with probability
    1 - walk_prob. Dangling current nodes always propose a uniform jump.
    """
    trace, kinds, start = _drive(graph, config, _kernels.mhrw_steps,
                                 _kernels.MHRW_DRAWS_PER_STEP,
                                 float(config.walk_prob))
    return WalkSample("mhrw", config, start, trace, kinds, graph.graph_hash())


def rwwj_sample(graph: DirectedGraph, config: SamplerConfig) -> WalkSample:
    """Run the jump-weighted random walk and return its sample.

    Raises:
        ValueError: if ``jump_weight`` is zero while the graph has a
            dangling node, which would strand the walker.
    """
    if config.jump_weight == 0.0 and int(graph.out_degrees.min()) == 0:
        raise ValueError("jump_weight 0 on a graph with dangling nodes")
    trace, kinds, start = _drive(graph, config, _kernels.rwwj_steps,
                                 _kernels.RWWJ_DRAWS_PER_STEP,
                                 float(config.jump_weight))
    return WalkSample("rwwj", config, start, trace, kinds, graph.graph_hash())


def sample(graph: DirectedGraph, method: str,
           config: SamplerConfig) -> WalkSample:
    """Dispatch to the sampler named by ``method``."""
    if method == "mhrw":
        return mhrw_sample(graph, config)
    if method == "rwwj":
        return rwwj_sample(graph, config)
    raise ValueError(f"unknown method {method!r}")


def _drive(graph, config, kernel, draws_per_step, param):
    n = graph.node_count
    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    if config.seed_node is None:
        start = int(rng.integers(n))
    else:
        start = graph.internal_id(config.seed_node)
    out_ptr, out_indices = graph.csr_out()
    trace = np.empty(config.budget, dtype=np.int32)
    kinds = np.empty(config.budget, dtype=np.uint8)
    cur = start
    done = 0
    while done < config.budget:
        m = min(_CHUNK_STEPS, config.budget - done)
        uniforms = rng.random((m, draws_per_step))
        cur = kernel(out_ptr, out_indices, n, param, uniforms,
                     trace[done:done + m], kinds[done:done + m], cur)
        done += m
    return trace, kinds, start


def split_halves(sample: WalkSample, rng_seed: int) -> tuple[set[int], set[int]]:
    """Randomly split the trace in half and return the two visited-node sets.

    The split is by step position under a seeded permutation, so repeated
    visits of one node can land in both halves.
    """
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    order = rng.permutation(sample.trace.size)
    half = sample.trace.size // 2
    first = sample.trace[order[:half]]
    second = sample.trace[order[half:]]
    return (set(map(int, np.unique(first))), set(map(int, np.unique(second))))


# -- trace files --------------------------------------------------------------

_TRACE_HEADER_RE = re.compile(r"^#\s*(\w+)\s+(.*\S)\s*$")


def save_trace(sample: WalkSample, graph: DirectedGraph, path) -> None:
    """Write a replayable text trace using external node ids.

    Layout: header comments (method, config, resolved start node, graph
    hash), one ``index node kind`` line per step, then one ``E src dst``
    line per collected edge.
    """
    if graph.graph_hash() != sample.graph_hash:
        raise ValueError("sample does not belong to this graph")
    ids = graph.node_ids
    cfg = sample.config
    seed_node = "uniform-random" if cfg.seed_node is None else str(cfg.seed_node)
    lines = [
        "# walksample-trace v1",
        f"# method {sample.method}",
        f"# budget {cfg.budget}",
        f"# walk_prob {cfg.walk_prob!r}",
        f"# jump_weight {cfg.jump_weight!r}",
        f"# rng_seed {cfg.rng_seed}",
        f"# seed_node {seed_node}",
        f"# start_node {int(ids[sample.start_node])}",
        f"# graph_hash {sample.graph_hash}",
    ]
    kind_words = np.array([_KIND_WORDS[KIND_WALK], _KIND_WORDS[KIND_JUMP],
                           _KIND_WORDS[KIND_REJECTION]])
    ext = ids[sample.trace]
    words = kind_words[sample.kinds]
    lines.extend(f"{i} {node} {word}"
                 for i, (node, word) in enumerate(zip(ext, words)))
    lines.extend(f"E {int(ids[s])} {int(ids[d])}"
                 for s, d in sample.collected_edges)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_trace(path, graph: DirectedGraph, check_hash: bool = True) -> WalkSample:
    """Read a trace written by ``save_trace`` back into a WalkSample.

    Verifies the stored graph hash against ``graph`` (unless disabled), the
    step count against the stored budget, and the edge section against the
    edges implied by the steps.
    """
    header: dict[str, str] = {}
    steps: list[tuple[int, int, str]] = []
    edge_lines: list[tuple[int, int]] = []
    for raw in Path(path).read_text(encoding="ascii").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _TRACE_HEADER_RE.match(line)
            if m:
                header[m.group(1)] = m.group(2)
            continue
        parts = line.split()
        if parts[0] == "E":
            if len(parts) != 3:
                raise ValueError(f"malformed edge line {line!r}")
            edge_lines.append((int(parts[1]), int(parts[2])))
        else:
            if len(parts) != 3:
                raise ValueError(f"malformed step line {line!r}")
            steps.append((int(parts[0]), int(parts[1]), parts[2]))

    required = ("method", "budget", "walk_prob", "jump_weight", "rng_seed",
                "seed_node", "start_node", "graph_hash")
    missing = [key for key in required if key not in header]
    if missing:
        raise ValueError(f"trace header missing {missing}")
    if check_hash and header["graph_hash"] != graph.graph_hash():
        raise ValueError("trace was sampled from a different graph "
                         f"(hash {header['graph_hash'][:12]}..., expected "
                         f"{graph.graph_hash()[:12]}...)")

    seed_node = (None if header["seed_node"] == "uniform-random"
                 else int(header["seed_node"]))
    config = SamplerConfig(budget=int(header["budget"]),
                           walk_prob=float(header["walk_prob"]),
                           jump_weight=float(header["jump_weight"]),
                           rng_seed=int(header["rng_seed"]),
                           seed_node=seed_node)
    if len(steps) != config.budget:
        raise ValueError(f"trace has {len(steps)} steps, budget says "
                         f"{config.budget}")
    if [s[0] for s in steps] != list(range(config.budget)):
        raise ValueError("step indices are not 0..budget-1 in order")

    trace = np.array([graph.internal_id(s[1]) for s in steps], dtype=np.int32)
    try:
        kinds = np.array([_WORD_KINDS[s[2]] for s in steps], dtype=np.uint8)
    except KeyError as exc:
        raise ValueError(f"unknown step kind {exc.args[0]!r}") from exc
    walk_sample = WalkSample(header["method"], config,
                             graph.internal_id(int(header["start_node"])),
                             trace, kinds, header["graph_hash"])

    stated = sorted((graph.internal_id(s), graph.internal_id(d))
                    for s, d in edge_lines)
    implied = [tuple(map(int, row)) for row in walk_sample.collected_edges]
    if stated != implied:
        raise ValueError("edge section does not match the step sequence")
    return walk_sample
