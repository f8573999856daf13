"""Unit tests for the synthetic graph families and spec strings."""

import numpy as np
import pytest

from walksample import GenSpec, generate, parse_gen_spec, symmetrize


def test_ring_edges():
    g = generate(GenSpec("ring", n=5))
    assert g.node_count == 5
    assert g.edge_count == 5
    assert all(g.has_edge(i, (i + 1) % 5) for i in range(5))
    assert list(g.out_degrees) == [1] * 5
    assert list(g.in_degrees) == [1] * 5


def test_single_node_ring_is_edgeless():
    g = generate(GenSpec("ring", n=1))
    assert g.node_count == 1
    assert g.edge_count == 0


def test_complete_bidirected():
    g = generate(GenSpec("complete_bidirected", n=4))
    assert g.node_count == 4
    assert g.edge_count == 12
    assert g.mutual_proportion() == 1.0


def test_erdos_renyi_deterministic():
    spec = GenSpec("erdos_renyi_directed", n=50, p=0.1, rng_seed=9)
    a = generate(spec)
    b = generate(spec)
    c = generate(GenSpec("erdos_renyi_directed", n=50, p=0.1, rng_seed=10))
    assert a.graph_hash() == b.graph_hash()
    assert a.graph_hash() != c.graph_hash()


def test_erdos_renyi_extremes():
    empty = generate(GenSpec("erdos_renyi_directed", n=6, p=0.0))
    assert empty.node_count == 6
    assert empty.edge_count == 0
    full = generate(GenSpec("erdos_renyi_directed", n=6, p=1.0))
    assert full.edge_count == 30
    assert full.stats()["self_loops_dropped"] == 0


def test_union_offsets_components():
    spec = parse_gen_spec("ring:n=3+complete_bidirected:n=2")
    g = generate(spec)
    assert g.node_count == 5
    assert g.edge_count == 3 + 2
    # No edge crosses the component boundary at internal index 3.
    src, dst = g.edge_arrays()
    assert all((s < 3) == (d < 3) for s, d in zip(src, dst))


def test_symmetrize_adds_reverse_edges(hand_graph, hand_sym):
    assert hand_sym.node_count == hand_graph.node_count
    assert hand_sym.edge_count == 4
    assert hand_sym.mutual_proportion() == 1.0
    assert list(hand_sym.out_degrees) == list(hand_sym.in_degrees)


def test_symmetrize_preserves_isolated_nodes():
    from walksample import DirectedGraph
    g = DirectedGraph.from_edges([0], [1], extra_nodes=[7])
    s = symmetrize(g)
    assert list(s.node_ids) == [0, 1, 7]
    assert s.out_degree(s.internal_id(7)) == 0


def test_parse_gen_spec_roundtrip():
    spec = parse_gen_spec("erdos_renyi_directed:n=10,p=0.5,seed=3")
    assert spec.family == "erdos_renyi_directed"
    assert (spec.n, spec.p, spec.rng_seed) == (10, 0.5, 3)
    assert parse_gen_spec(spec.label()) == spec


def test_parse_gen_spec_aliases():
    assert parse_gen_spec("er:n=4,p=0.1").family == "erdos_renyi_directed"
    assert parse_gen_spec("complete:n=4").family == "complete_bidirected"


def test_parse_gen_spec_union_label_roundtrip():
    spec = parse_gen_spec("ring:n=10+complete:n=4")
    assert spec.family == "union"
    assert spec.total_nodes() == 14
    assert parse_gen_spec(spec.label()) == spec


@pytest.mark.parametrize("text", [
    "mystery:n=3",
    "ring",
    "ring:n=0",
    "erdos_renyi_directed:n=5",
    "erdos_renyi_directed:n=5,p=1.5",
    "erdos_renyi_directed:n=50000,p=0.1",
    "ring:n=3,p=0.5",
    "ring:n=3,weird=1",
    "ring:n",
    "",
])
def test_bad_specs_rejected(text):
    with pytest.raises(ValueError):
        parse_gen_spec(text)


def test_union_needs_two_components():
    with pytest.raises(ValueError):
        GenSpec("union", components=(GenSpec("ring", n=3),))


def test_generated_ids_are_contiguous():
    g = generate(GenSpec("erdos_renyi_directed", n=30, p=0.05, rng_seed=1))
    assert list(g.node_ids) == list(range(30))
