"""Exact per-step transition laws of the samplers, as dense matrices.

The matrices realize the samplers' step semantics node for node, so walk
simulations can be validated against linear algebra: row i is the exact
distribution of the next trace entry given the walker sits at node i,
rejections included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph

_DEFAULT_MAX_NODES = 2000


@dataclass(frozen=True)
class ChainMatrix:
    """Dense row-stochastic transition matrix of one sampler on one graph.

    Attributes:
        entries: (N, N) float64 matrix; entries[i, j] is the one-step
            probability that the next trace entry is j given the walker
            is at i.
        method: "mhrw" or "rwwj".
        params: the sampler parameter that shaped the matrix.
    """

    entries: np.ndarray
    method: str
    params: dict

    @property
    def node_count(self) -> int:
        return int(self.entries.shape[0])


def build_chain_matrix(graph: DirectedGraph, method: str, *,
                       walk_prob: float = 0.85, jump_weight: float = 10.0,
                       max_nodes: int = _DEFAULT_MAX_NODES) -> ChainMatrix:
    """Materialize the exact transition matrix of a sampler on ``graph``.

    Dense construction; refuses graphs above ``max_nodes`` to keep memory
    in check.
    """
    n = graph.node_count
    if n > max_nodes:
        raise ValueError(f"graph has {n} nodes, above the dense cap {max_nodes}")
    if method == "mhrw":
        entries = _mhrw_matrix(graph, walk_prob)
        params = {"walk_prob": float(walk_prob)}
    elif method == "rwwj":
        if jump_weight == 0.0 and int(graph.out_degrees.min()) == 0:
            raise ValueError("jump_weight 0 on a graph with dangling nodes")
        entries = _rwwj_matrix(graph, jump_weight)
        params = {"jump_weight": float(jump_weight)}
    else:
        raise ValueError(f"unknown method {method!r}")
    return ChainMatrix(entries, method, params)


def _adjacency(graph: DirectedGraph) -> np.ndarray:
    n = graph.node_count
    adj = np.zeros((n, n), dtype=float)
    src, dst = graph.edge_arrays()
    adj[src, dst] = 1.0
    return adj


def _mhrw_matrix(graph: DirectedGraph, walk_prob: float) -> np.ndarray:
    n = graph.node_count
    adj = _adjacency(graph)
    deg = graph.out_degrees.astype(float)
    base = (1.0 - walk_prob) / n

    # Proposal law per row: mix of uniform out-neighbor and uniform node;
    # dangling rows propose uniformly over all nodes.
    with np.errstate(divide="ignore", invalid="ignore"):
        proposal = walk_prob * adj / deg[:, None] + base
    proposal[deg == 0.0, :] = 1.0 / n

    # Acceptance: degree-corrected ratio on existing edges (dangling targets
    # always accepted), 1 - walk_prob elsewhere.
    with np.errstate(divide="ignore", invalid="ignore"):
        score = base + walk_prob / deg
        ratio = np.minimum(score[None, :] / score[:, None], 1.0)
    ratio[:, deg == 0.0] = 1.0
    accept = np.where(adj > 0.0, ratio, 1.0 - walk_prob)

    entries = proposal * accept
    # The diagonal absorbs rejected proposals and accepted self-jumps.
    np.fill_diagonal(entries, 0.0)
    np.fill_diagonal(entries, 1.0 - entries.sum(axis=1))
    return entries


def _rwwj_matrix(graph: DirectedGraph, jump_weight: float) -> np.ndarray:
    n = graph.node_count
    adj = _adjacency(graph)
    deg = graph.out_degrees.astype(float)
    return (jump_weight / n + adj) / (deg + jump_weight)[:, None]


def stationary_distribution(chain: ChainMatrix, tol: float = 1e-12,
                            max_iterations: int = 200_000) -> np.ndarray:
    """Stationary row vector of the chain by power iteration.

    Starts from the uniform vector and iterates until the L1 residual
    ``||pi @ M - pi||_1`` drops below ``tol``.

    Raises:
        RuntimeError: when the residual has not met ``tol`` after
            ``max_iterations`` iterations; the message reports the residual.
    """
    matrix = chain.entries
    pi = np.full(chain.node_count, 1.0 / chain.node_count)
    for _ in range(max_iterations):
        nxt = pi @ matrix
        residual = float(np.abs(nxt - pi).sum())
        if residual < tol:
            return pi / pi.sum()
        pi = nxt / nxt.sum()
    raise RuntimeError(f"power iteration stalled at residual {residual:.3e} "
                       f"after {max_iterations} iterations (tol {tol:.1e})")


def mhrw_edge_transition(graph: DirectedGraph, src: int, dst: int,
                         walk_prob: float) -> float:
    """Exact one-step probability of traversing the existing edge src -> dst.

    Precondition: the edge exists, so the source out-degree is positive.
    """
    n = graph.node_count
    base = (1.0 - walk_prob) / n
    deg_src = graph.out_degrees[src]
    deg_dst = graph.out_degrees[dst]
    if deg_dst == 0:
        accept = 1.0
    else:
        accept = min((base + walk_prob / deg_dst)
                     / (base + walk_prob / deg_src), 1.0)
    return (walk_prob / deg_src + base) * accept


def rwwj_edge_transition(graph: DirectedGraph, src: int, dst: int,
                         jump_weight: float) -> float:
    """Exact one-step probability of traversing the existing edge src -> dst."""
    n = graph.node_count
    return ((jump_weight / n + 1.0)
            / (float(graph.out_degrees[src]) + jump_weight))
