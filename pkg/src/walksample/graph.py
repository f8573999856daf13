"""Directed-graph storage, edge-list ingestion, and exact property computation.

Graphs are immutable once built. External node ids are arbitrary non-negative
integers; internally they are remapped to dense indices ``0..N-1`` by sorted
rank, and all library operations speak internal indices. The id map is kept
for reporting and file output.
"""

from __future__ import annotations

import gzip
import hashlib
import io
import logging
import os
import re
from dataclasses import dataclass

import numpy as np

from .distribution import Distribution

logger = logging.getLogger(__name__)

# Optional leading-comment flag declaring ids 0..n-1 (covers isolated nodes).
# Deliberately does not match the "# Nodes: n Edges: m" banner of common
# public edge lists, whose counts are not id ranges.
_NODE_FLAG_RE = re.compile(r"^#nodes\s+(\d+)\s*$")

_GZIP_MAGIC = b"\x1f\x8b"


class EdgeListParseError(ValueError):
    """Malformed edge-list input. ``line_number`` is 1-based when known."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class RatioAverage:
    """Average of in/out degree ratios with the count of excluded nodes."""

    value: float
    excluded: int


class DirectedGraph:
    """Immutable directed graph in compressed sparse row form.

    Both orientations are stored so out- and in-neighborhoods are O(degree).
    Adjacency lists are sorted, which makes edge membership a binary search.

    Attributes:
        node_ids: sorted external ids, ``node_ids[v]`` is the external id of
            internal index ``v``.
        out_degrees, in_degrees: per-node degree arrays (int64).
        edge_count: number of distinct directed edges.
        self_loops_dropped: self-loop occurrences removed during construction.
        duplicates_dropped: repeated edge occurrences collapsed.
    """

    def __init__(self, node_ids, out_ptr, out_indices, in_ptr, in_indices,
                 self_loops_dropped=0, duplicates_dropped=0):
        self.node_ids = node_ids
        self._out_ptr = out_ptr
        self._out_indices = out_indices
        self._in_ptr = in_ptr
        self._in_indices = in_indices
        self.out_degrees = np.diff(out_ptr).astype(np.int64)
        self.in_degrees = np.diff(in_ptr).astype(np.int64)
        self.edge_count = int(out_indices.size)
        self.self_loops_dropped = int(self_loops_dropped)
        self.duplicates_dropped = int(duplicates_dropped)
        self._hash = None
        self._edge_keys = None
        for arr in (node_ids, out_ptr, out_indices, in_ptr, in_indices):
            arr.setflags(write=False)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, sources, targets, extra_nodes=None) -> "DirectedGraph":
        """Build a graph from parallel arrays of external endpoint ids.

        Self-loops are dropped and duplicate edges collapsed; both are
        counted on the result. ``extra_nodes`` declares ids that must be in
        the node set even if they touch no edge.

        Raises:
            ValueError: on negative ids or an empty node set.
        """
        sources = np.asarray(sources, dtype=np.int64).ravel()
        targets = np.asarray(targets, dtype=np.int64).ravel()
        if sources.size != targets.size:
            raise ValueError("sources and targets differ in length")
        pools = [sources, targets]
        if extra_nodes is not None:
            pools.append(np.asarray(extra_nodes, dtype=np.int64).ravel())
        all_ids = np.concatenate(pools) if pools else np.empty(0, np.int64)
        if all_ids.size == 0:
            raise ValueError("graph has no nodes")
        if all_ids.min() < 0:
            raise ValueError("node ids must be non-negative")
        node_ids = np.unique(all_ids)
        n = node_ids.size
        if n > np.iinfo(np.int32).max:
            raise ValueError("node count exceeds int32 indexing range")

        src = np.searchsorted(node_ids, sources).astype(np.int64)
        dst = np.searchsorted(node_ids, targets).astype(np.int64)

        loop_mask = src == dst
        self_loops = int(loop_mask.sum())
        if self_loops:
            src, dst = src[~loop_mask], dst[~loop_mask]

        # Composite key sorts by (src, dst) and exposes duplicates at once.
        keys = src * n + dst
        unique_keys = np.unique(keys)
        duplicates = int(keys.size - unique_keys.size)
        src = (unique_keys // n).astype(np.int32)
        dst = (unique_keys % n).astype(np.int32)

        out_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=out_ptr[1:])
        out_indices = dst.copy()

        rev_keys = dst.astype(np.int64) * n + src
        order = np.argsort(rev_keys, kind="stable")
        in_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dst, minlength=n), out=in_ptr[1:])
        in_indices = src[order].copy()

        return cls(node_ids, out_ptr, out_indices.astype(np.int32),
                   in_ptr, in_indices.astype(np.int32),
                   self_loops_dropped=self_loops,
                   duplicates_dropped=duplicates)

    # -- basic structure ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return int(self.node_ids.size)

    def external_id(self, v: int) -> int:
        """External id of internal index ``v``."""
        return int(self.node_ids[v])

    def internal_id(self, external: int) -> int:
        """Internal index of an external id. Raises KeyError if unknown."""
        pos = int(np.searchsorted(self.node_ids, external))
        if pos >= self.node_count or self.node_ids[pos] != external:
            raise KeyError(f"node id {external} not in graph")
        return pos

    def out_degree(self, v: int) -> int:
        self._check_node(v)
        return int(self.out_degrees[v])

    def in_degree(self, v: int) -> int:
        self._check_node(v)
        return int(self.in_degrees[v])

    def out_neighbors(self, v: int) -> np.ndarray:
        """Sorted internal indices of ``v``'s out-neighbors (read-only view)."""
        self._check_node(v)
        return self._out_indices[self._out_ptr[v]:self._out_ptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        self._check_node(v)
        return self._in_indices[self._in_ptr[v]:self._in_ptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        """Whether the directed edge (u -> v) exists."""
        self._check_node(u)
        self._check_node(v)
        row = self.out_neighbors(u)
        pos = int(np.searchsorted(row, v))
        return pos < row.size and int(row[pos]) == v

    def has_edges(self, src, dst) -> np.ndarray:
        """Vectorized edge membership for parallel endpoint arrays."""
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if self.edge_count == 0 or src.size == 0:
            return np.zeros(src.shape, dtype=bool)
        keys = self._sorted_edge_keys()
        queries = src * self.node_count + dst
        pos = np.searchsorted(keys, queries)
        pos[pos >= keys.size] = keys.size - 1
        return keys[pos] == queries

    def _sorted_edge_keys(self) -> np.ndarray:
        if getattr(self, "_edge_keys", None) is None:
            src, dst = self.edge_arrays()
            self._edge_keys = src.astype(np.int64) * self.node_count + dst
        return self._edge_keys

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges as (src, dst) internal-index arrays, sorted by (src, dst)."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int32),
                        self.out_degrees)
        return src, self._out_indices.copy()

    def csr_out(self) -> tuple[np.ndarray, np.ndarray]:
        """Out-adjacency as (ptr, indices); read-only arrays."""
        return self._out_ptr, self._out_indices

    def _check_node(self, v: int):
        if not 0 <= v < self.node_count:
            raise IndexError(f"node index {v} out of range [0, {self.node_count})")

    # -- exact properties ---------------------------------------------------

    def degree_distribution(self, direction: str = "in") -> Distribution:
        """Exact degree distribution over all nodes.

        Args:
            direction: ``"in"`` or ``"out"``.
        """
        deg = self._degree_array(direction)
        counts = np.bincount(deg)
        return Distribution.from_counts(counts)

    def ratio(self, v: int) -> float | None:
        """In-degree over out-degree of ``v``; None when out-degree is zero."""
        self._check_node(v)
        if self.out_degrees[v] == 0:
            return None
        return float(self.in_degrees[v]) / float(self.out_degrees[v])

    def ratio_values(self) -> np.ndarray:
        """Per-node in/out ratio with NaN where the ratio is undefined."""
        out = self.out_degrees.astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = self.in_degrees / out
        vals[self.out_degrees == 0] = np.nan
        return vals

    def ratio_average(self) -> RatioAverage:
        """Mean in/out ratio over nodes with positive out-degree.

        Raises:
            ValueError: when every node has zero out-degree.
        """
        defined = self.out_degrees > 0
        if not defined.any():
            raise ValueError("no node has positive out-degree")
        vals = self.in_degrees[defined] / self.out_degrees[defined]
        return RatioAverage(float(vals.mean()), int((~defined).sum()))

    def mutual_proportion(self) -> float:
        """Fraction of directed edges whose reverse edge also exists.

        Raises:
            ValueError: on an edgeless graph.
        """
        if self.edge_count == 0:
            raise ValueError("mutual proportion undefined on an edgeless graph")
        src, dst = self.edge_arrays()
        reciprocated = int(self.has_edges(dst, src).sum())
        return reciprocated / self.edge_count

    def graph_hash(self) -> str:
        """SHA-256 over a canonical little-endian byte encoding of the graph."""
        if self._hash is None:
            h = hashlib.sha256()
            h.update(b"walksample-graph-v1\n")
            h.update(str(self.node_count).encode())
            h.update(b"\n")
            h.update(np.ascontiguousarray(self.node_ids, dtype="<i8").tobytes())
            h.update(np.ascontiguousarray(self._out_ptr, dtype="<i8").tobytes())
            h.update(np.ascontiguousarray(self._out_indices, dtype="<i4").tobytes())
            self._hash = h.hexdigest()
        return self._hash

    def stats(self) -> dict:
        """Summary statistics used by reports and the command line."""
        return {
            "nodes": self.node_count,
            "edges": self.edge_count,
            "dangling_nodes": int((self.out_degrees == 0).sum()),
            "isolated_nodes": int(((self.out_degrees == 0)
                                   & (self.in_degrees == 0)).sum()),
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_dropped": self.duplicates_dropped,
            "mutual_proportion": (self.mutual_proportion()
                                  if self.edge_count else None),
            "ratio_average": (self.ratio_average().value
                              if (self.out_degrees > 0).any() else None),
            "ratio_excluded": (self.ratio_average().excluded
                               if (self.out_degrees > 0).any() else None),
            "graph_hash": self.graph_hash(),
        }

    def _degree_array(self, direction: str) -> np.ndarray:
        if direction == "in":
            return self.in_degrees
        if direction == "out":
            return self.out_degrees
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")


# -- edge-list ingestion ----------------------------------------------------


def load_edge_list(source) -> DirectedGraph:
    """Read a whitespace-separated directed edge list into a graph.

    Accepts a filesystem path or a binary file object; gzip input is
    detected by suffix or magic bytes. Lines starting with ``#`` are
    comments; a leading comment ``#nodes n`` declares ids ``0..n-1`` so
    isolated nodes survive the round trip. Each remaining line must hold
    exactly two non-negative integers ``src dst``.

    Self-loops are dropped with a logged count; duplicate edges collapse
    into one. Raises EdgeListParseError (with a 1-based line number) on
    malformed lines and ValueError on empty input.
    """
    raw = _read_source_bytes(source)
    if not raw.strip():
        raise ValueError("empty edge-list input")
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise EdgeListParseError(f"input is not ASCII text: {exc}") from exc
    declared = _leading_node_flag(text)

    try:
        srcs, dsts = _parse_fast(text)
    except _FastParseFailed:
        srcs, dsts = _parse_exact(text)
    if (srcs.size and (srcs.min() < 0 or dsts.min() < 0)):
        # Rescan to attribute the failure to a line.
        _parse_exact(text)
        raise EdgeListParseError("negative node id in edge list")

    extra = np.arange(declared, dtype=np.int64) if declared else None
    if srcs.size == 0 and extra is None:
        raise ValueError("edge-list input declares no nodes")
    graph = DirectedGraph.from_edges(srcs, dsts, extra_nodes=extra)
    if graph.self_loops_dropped:
        logger.warning("dropped %d self-loop(s) from edge list",
                       graph.self_loops_dropped)
    return graph


def _read_source_bytes(source) -> bytes:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            raw = fh.read()
    elif hasattr(source, "read"):
        raw = source.read()
        if isinstance(raw, str):
            raw = raw.encode("ascii")
    else:
        raise TypeError("source must be a path or a file object")
    if raw[:2] == _GZIP_MAGIC:
        raw = gzip.decompress(raw)
    return raw


def _leading_node_flag(text: str) -> int | None:
    """Node-count flag from the leading comment block, if any."""
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if not stripped.startswith("#"):
            return None
        m = _NODE_FLAG_RE.match(stripped)
        if m:
            return int(m.group(1))
    return None


class _FastParseFailed(Exception):
    pass


def _parse_fast(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized two-column integer parse; falls back on any irregularity."""
    import pandas as pd

    try:
        # The sentinel third column stays all-NaN for well-formed two-token
        # lines; anything wider would otherwise be truncated silently.
        frame = pd.read_csv(io.StringIO(text), sep=r"\s+", comment="#",
                            header=None, names=("src", "dst", "extra"),
                            dtype={"src": np.int64, "dst": np.int64},
                            engine="c")
    except pd.errors.EmptyDataError:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    except (ValueError, pd.errors.ParserError) as exc:
        raise _FastParseFailed from exc
    if frame["extra"].notna().any() or not isinstance(frame.index, pd.RangeIndex):
        raise _FastParseFailed
    if frame[["src", "dst"]].isna().any().any():
        raise _FastParseFailed
    return frame["src"].to_numpy(), frame["dst"].to_numpy()


def _parse_exact(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Line-by-line parse with exact error locations."""
    srcs: list[int] = []
    dsts: list[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        # '#' starts a comment anywhere on the line, matching the fast path.
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"line {number}: expected 'src dst', got {len(parts)} token(s)",
                line_number=number)
        try:
            s, t = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                f"line {number}: non-integer node id", line_number=number)
        if s < 0 or t < 0:
            raise EdgeListParseError(
                f"line {number}: negative node id", line_number=number)
        srcs.append(s)
        dsts.append(t)
    return np.asarray(srcs, np.int64), np.asarray(dsts, np.int64)
