"""Synthetic graph families for experiments and tests.

Every family is deterministic in its parameters: the same ``GenSpec``
always yields a byte-identical graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import DirectedGraph

# Dense Bernoulli sampling allocates an n*n mask.
_MAX_DENSE_NODES = 20_000

_FAMILIES = ("erdos_renyi_directed", "ring", "complete_bidirected", "union")
_ALIASES = {"er": "erdos_renyi_directed", "complete": "complete_bidirected"}


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one synthetic graph.

    Attributes:
        family: one of erdos_renyi_directed, ring, complete_bidirected, union.
        n: node count (all families except union).
        p: independent edge probability (erdos_renyi_directed only).
        rng_seed: seed for randomized families.
        components: member specs for union; their node ids are shifted into
            disjoint ranges in listed order.
    """

    family: str
    n: int | None = None
    p: float | None = None
    rng_seed: int = 0
    components: tuple["GenSpec", ...] = field(default_factory=tuple)

    def __post_init__(self):
        family = _ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", family)
        if family not in _FAMILIES:
            raise ValueError(f"unknown graph family {self.family!r}")
        if family == "union":
            if len(self.components) < 2:
                raise ValueError("union needs at least two components")
            if any(c.family == "union" for c in self.components):
                raise ValueError("nested unions are not supported")
            return
        if self.n is None or self.n < 1:
            raise ValueError(f"{family} needs n >= 1")
        if family == "erdos_renyi_directed":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError("erdos_renyi_directed needs p in [0, 1]")
            if self.n > _MAX_DENSE_NODES:
                raise ValueError(f"n above dense-generation cap {_MAX_DENSE_NODES}")
        elif self.p is not None:
            raise ValueError(f"{family} takes no edge probability")

    def total_nodes(self) -> int:
        if self.family == "union":
            return sum(c.total_nodes() for c in self.components)
        return int(self.n)

    def label(self) -> str:
        """Canonical spec string; parse_gen_spec inverts it."""
        if self.family == "union":
            return "+".join(c.label() for c in self.components)
        parts = [f"n={self.n}"]
        if self.family == "erdos_renyi_directed":
            parts.append(f"p={self.p!r}")
            parts.append(f"seed={self.rng_seed}")
        return f"{self.family}:" + ",".join(parts)


def generate(spec: GenSpec) -> DirectedGraph:
    """Materialize ``spec`` into a graph with node ids 0..n-1."""
    if spec.family == "union":
        return _generate_union(spec)
    src, dst = _family_edges(spec)
    return DirectedGraph.from_edges(src, dst,
                                    extra_nodes=np.arange(spec.n, dtype=np.int64))


def _family_edges(spec: GenSpec) -> tuple[np.ndarray, np.ndarray]:
    n = spec.n
    if spec.family == "erdos_renyi_directed":
        rng = np.random.Generator(np.random.PCG64(spec.rng_seed))
        mask = rng.random((n, n)) < spec.p
        np.fill_diagonal(mask, False)
        src, dst = np.nonzero(mask)
        return src.astype(np.int64), dst.astype(np.int64)
    if spec.family == "ring":
        if n == 1:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        src = np.arange(n, dtype=np.int64)
        return src, (src + 1) % n
    # complete_bidirected: every ordered pair of distinct nodes
    if n == 1:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    src = np.repeat(np.arange(n, dtype=np.int64), n)
    dst = np.tile(np.arange(n, dtype=np.int64), n)
    keep = src != dst
    return src[keep], dst[keep]


def _generate_union(spec: GenSpec) -> DirectedGraph:
    srcs, dsts = [], []
    offset = 0
    for comp in spec.components:
        s, d = _family_edges(comp)
        srcs.append(s + offset)
        dsts.append(d + offset)
        offset += comp.n
    return DirectedGraph.from_edges(np.concatenate(srcs), np.concatenate(dsts),
                                    extra_nodes=np.arange(offset, dtype=np.int64))


def symmetrize(graph: DirectedGraph) -> DirectedGraph:
    """Union of the graph with its reverse; the node set is preserved."""
    src, dst = graph.edge_arrays()
    ext = graph.node_ids
    src_ext = ext[src]
    dst_ext = ext[dst]
    return DirectedGraph.from_edges(np.concatenate([src_ext, dst_ext]),
                                    np.concatenate([dst_ext, src_ext]),
                                    extra_nodes=ext)


def parse_gen_spec(text: str) -> GenSpec:
    """Parse a generator spec string.

    Grammar: ``family:key=value,...`` with ``+`` joining union components,
    for example ``erdos_renyi_directed:n=100,p=0.05,seed=7`` or
    ``ring:n=10+complete_bidirected:n=4``. ``er`` and ``complete`` are
    accepted aliases.
    """
    parts = [p.strip() for p in text.split("+")]
    specs = [_parse_single(p) for p in parts if p]
    if not specs:
        raise ValueError("empty generator spec")
    if len(specs) == 1:
        return specs[0]
    return GenSpec(family="union", components=tuple(specs))


def _parse_single(text: str) -> GenSpec:
    family, _, arg_text = text.partition(":")
    family = family.strip()
    kwargs: dict = {}
    if arg_text.strip():
        for item in arg_text.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            value = value.strip()
            if not sep or not key or not value:
                raise ValueError(f"malformed generator argument {item!r}")
            if key == "n":
                kwargs["n"] = int(value)
            elif key == "p":
                kwargs["p"] = float(value)
            elif key == "seed":
                kwargs["rng_seed"] = int(value)
            else:
                raise ValueError(f"unknown generator argument {key!r}")
    return GenSpec(family=family, **kwargs)
