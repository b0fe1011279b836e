import io

import networkx as nx
import numpy as np
import pytest

from dspaths import errors
from dspaths.graph import (WeightedGraph, bidirect, gen_local_dag, gen_random, gen_random_dag,
                           parse, serialize)
from dspaths.shortest_paths import Distances, topological_order


def test_parse_single_arc():
    g = parse("directed 2 1\n0 1 5")
    assert g.directed and g.n == 2 and g.edges() == [(0, 1, 5)]


def test_parse_accepts_streams_and_comments():
    g = parse(io.StringIO("# a comment\nundirected 3 2\n\n0 1 2\n1 2 3\n"))
    assert g.kind == "undirected" and g.m == 2


@pytest.mark.parametrize("text, exc, line", [
    ("undirected 2 1\n0 1 0", errors.NonPositiveUndirectedWeight, 2),
    ("directed 2 1\n0 x 5", errors.MalformedLine, 2),
    ("directed 2 1\n0 1", errors.MalformedLine, 2),
    ("directed 2 2\n0 1 1", errors.MalformedHeader, 1),
    ("graph 2 1\n0 1 1", errors.MalformedHeader, 1),
    ("directed 2 1\n0 2 1", errors.IndexOutOfRange, 2),
    ("directed 2 1\n1 1 1", errors.SelfLoop, 2),
    ("directed 2 2\n0 1 1\n0 1 2", errors.DuplicateEdge, 3),
    ("undirected 2 2\n0 1 1\n1 0 2", errors.DuplicateEdge, 3),
])
def test_parse_errors_carry_line_numbers(text, exc, line):
    with pytest.raises(exc) as info:
        parse(text)
    assert f"line {line}" in str(info.value)


def test_empty_input_is_rejected():
    with pytest.raises(errors.MalformedHeader):
        parse("")


def test_directed_antiparallel_arcs_are_allowed():
    g = parse("directed 2 2\n0 1 1\n1 0 -1")
    assert g.m == 2


def test_round_trip():
    g = gen_random(9, 20, (-3, 7), "directed", 4)
    h = parse(serialize(g))
    assert serialize(h) == serialize(g)
    assert h.edges() == g.edges()


def test_bidirect_one_edge():
    g = parse("undirected 2 1\n0 1 4")
    b = bidirect(g)
    assert b.directed and sorted(b.edges()) == [(0, 1, 4), (1, 0, 4)]
    assert len(set(b.edge_ids.tolist())) == 1


def test_bidirect_rejects_directed():
    with pytest.raises(errors.KindMismatch):
        bidirect(parse("directed 2 1\n0 1 1"))


def test_bidirect_four_cycle_distances():
    g = parse("undirected 4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1")
    M = Distances(bidirect(g)).matrix
    assert M[0, 2] == 2 and M[1, 3] == 2 and M[0, 1] == 1 and M[3, 0] == 1


@pytest.mark.parametrize("seed", range(10))
def test_bidirect_preserves_distances(seed):
    g = gen_random(12, 25, (1, 9), "undirected", seed)
    M = Distances(bidirect(g)).matrix
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_weighted_edges_from(g.edges())
    lengths = dict(nx.all_pairs_dijkstra_path_length(ref))
    for u in range(g.n):
        for v in range(g.n):
            if v in lengths[u]:
                assert M[u, v] == lengths[u][v]
            else:
                assert M[u, v] >= 1 << 62


def test_gen_random_edgeless():
    g = gen_random(5, 0, (1, 3), "directed", 0)
    assert g.n == 5 and g.m == 0


def test_gen_random_is_deterministic():
    a = gen_random(30, 60, (1, 5), "undirected", 11)
    b = gen_random(30, 60, (1, 5), "undirected", 11)
    assert serialize(a) == serialize(b)


def test_gen_random_always_validates():
    for seed in range(1000):
        g = gen_random(6, 8, (1, 5), "directed", seed)
        assert serialize(parse(serialize(g))) == serialize(g)


@pytest.mark.parametrize("args", [(3, 7, (1, 2), "directed"), (3, 4, (1, 2), "undirected"),
                                  (3, 1, (5, 2), "directed")])
def test_gen_random_infeasible(args):
    with pytest.raises(errors.InfeasibleEdgeCount):
        gen_random(*args, 0)


def test_gen_random_undirected_needs_positive_weights():
    with pytest.raises(errors.NonPositiveUndirectedWeight):
        gen_random(4, 3, (0, 2), "undirected", 0)


def test_gen_random_large_uses_rejection_sampling():
    g = gen_random(5000, 8000, (1, 5), "directed", 2)
    keys = g.tails * g.n + g.heads
    assert g.m == 8000 and np.unique(keys).size == 8000 and not np.any(g.tails == g.heads)


@pytest.mark.parametrize("gen", [lambda s: gen_random_dag(40, 120, (1, 5), s),
                                 lambda s: gen_local_dag(400, 1000, (1, 5), 5, s)])
def test_dag_generators_are_acyclic(gen):
    for seed in range(5):
        g = gen(seed)
        assert topological_order(g.n, g.tails, g.heads) is not None


def test_from_edges_validates():
    with pytest.raises(errors.SelfLoop):
        WeightedGraph.from_edges("directed", 3, [(1, 1, 2)])


def test_without_vertices_keeps_ids():
    g = parse("directed 3 2\n0 1 1\n1 2 1")
    h = g.without_vertices([1])
    assert h.n == 3 and h.m == 0
