import itertools

import networkx as nx
import numpy as np
import pytest

from conftest import directed, unit
from dspaths import errors, oracle
from dspaths.graph import gen_random
from dspaths.shortest_paths import (UNREACH, Distances, TightDag, apsp, assert_no_zero_cycle,
                                    edge_on_sp, johnson_potentials, strong_components, tight_dag,
                                    topological_order, vertex_on_sp)

DIAMOND = directed(4, unit([(0, 1), (0, 2), (1, 3), (2, 3)]))


def _floyd_warshall(g):
    ref = nx.DiGraph()
    ref.add_nodes_from(range(g.n))
    ref.add_weighted_edges_from(g.edges())
    return nx.floyd_warshall(ref)


def test_three_cycle():
    M = apsp(directed(3, unit([(0, 1), (1, 2), (2, 0)]))).matrix
    assert M[0, 1] == 1 and M[1, 0] == 2


def test_negative_chain():
    D = Distances(directed(3, [(0, 1, -2), (1, 2, 3)]))
    assert D.dist(0, 2) == 1
    assert D.dist(2, 0) == UNREACH


@pytest.mark.parametrize("seed", range(15))
def test_positive_digraph_matches_floyd_warshall(seed):
    g = gen_random(8, 20, (1, 9), "directed", seed)
    M = apsp(g).matrix
    ref = _floyd_warshall(g)
    for u, v in itertools.product(range(g.n), repeat=2):
        expect = ref[u][v]
        assert (M[u, v] >= UNREACH) if expect == float("inf") else M[u, v] == expect


def _no_negative_cycles(seed):
    for k in itertools.count():
        g = gen_random(7, 14, (-3, 5), "directed", seed * 1000 + k)
        cycles = oracle.simple_cycles(g)
        if all(oracle.cycle_weight(g, c) >= 0 for c in cycles):
            return g, cycles


@pytest.mark.parametrize("seed", range(15))
def test_mixed_weights_match_floyd_warshall(seed):
    g, cycles = _no_negative_cycles(seed)
    if any(oracle.cycle_weight(g, c) == 0 for c in cycles):
        with pytest.raises(errors.ZeroCycle):
            Distances(g)
        return
    M = Distances(g).matrix
    ref = _floyd_warshall(g)
    for u, v in itertools.product(range(g.n), repeat=2):
        expect = ref[u][v]
        assert (M[u, v] >= UNREACH) if expect == float("inf") else M[u, v] == expect


def test_zero_cycle_rejected():
    g = directed(2, [(0, 1, 1), (1, 0, -1)])
    with pytest.raises(errors.ZeroCycle):
        Distances(g)
    with pytest.raises(errors.ZeroCycle):
        assert_no_zero_cycle(g, johnson_potentials(g))


def test_negative_cycle_rejected():
    with pytest.raises(errors.NegativeCycle):
        Distances(directed(2, [(0, 1, 1), (1, 0, -2)]))


def test_positive_digraph_passes_zero_cycle_check():
    g = gen_random(20, 60, (1, 5), "directed", 3)
    assert_no_zero_cycle(g, johnson_potentials(g))


def test_zero_weight_arcs_without_cycle_are_fine():
    g = directed(3, [(0, 1, 0), (1, 2, 0), (0, 2, 0)])
    D = Distances(g)
    assert D.dist(0, 2) == 0
    assert list(D.order_from(0)) == [0, 1, 2]


def test_vertex_on_sp_diamond():
    g = directed(6, unit([(0, 1), (0, 2), (1, 3), (2, 3)]) + [(0, 4, 5), (4, 3, 5)])
    D = Distances(g)
    assert vertex_on_sp(D, 0, 1, 3) and vertex_on_sp(D, 0, 2, 3)
    assert not vertex_on_sp(D, 0, 4, 3)
    assert not vertex_on_sp(D, 0, 5, 3)


@pytest.mark.parametrize("seed", range(10))
def test_on_sp_predicates_match_enumeration(seed):
    g = gen_random(8, 18, (1, 4), "directed", 100 + seed)
    D = Distances(g)
    a = g.arcs
    for x, y in itertools.product(range(g.n), repeat=2):
        paths = oracle.enum_paths(g, D, x, y)
        verts = {v for p in paths for v in p}
        arcs = {(u, v) for p in paths for u, v in zip(p, p[1:])}
        for v in range(g.n):
            assert vertex_on_sp(D, x, v, y) == (v in verts)
        for e in range(a.m):
            assert edge_on_sp(D, g, x, e, y) == ((int(a.tail[e]), int(a.head[e])) in arcs)


def test_tight_dag_diamond():
    g = directed(4, unit([(0, 1), (0, 2), (1, 3), (2, 3)]) + [(0, 3, 5)])
    dag = tight_dag(g, Distances(g), 0)
    assert sorted(dag.edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    into = tight_dag(g, Distances(g), 3, "into")
    assert sorted(into.edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert into.order[0] == 3
    with pytest.raises(errors.KindMismatch):
        tight_dag(g, Distances(g), 0, "sideways")


def _count_paths(dag, x, y):
    succ = dag.successors()
    memo = {}

    def count(u):
        if u == y:
            return 1
        if u not in memo:
            memo[u] = sum(count(v) for v in succ[u])
        return memo[u]
    return count(x)


@pytest.mark.parametrize("seed", range(10))
def test_tight_dag_path_counts(seed):
    g = gen_random(8, 20, (1, 3), "directed", 200 + seed)
    D = Distances(g)
    for x in range(g.n):
        dag = TightDag(g, D, x)
        assert topological_order(g.n, dag.tail, dag.head) is not None
        pos = {v: i for i, v in enumerate(dag.order.tolist())}
        assert all(pos[u] < pos[v] for u, v in dag.edges())
        for y in range(g.n):
            assert _count_paths(dag, x, y) == len(oracle.enum_paths(g, D, x, y))


def test_undirected_columns_equal_rows():
    g = gen_random(15, 30, (1, 5), "undirected", 8)
    D = Distances(g)
    assert np.array_equal(D.col(3), D.row(3))


def test_strong_components_match_networkx():
    g = gen_random(40, 70, (1, 2), "directed", 5)
    comp = strong_components(g)
    ref = nx.DiGraph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(zip(g.tails.tolist(), g.heads.tolist()))
    for scc in nx.strongly_connected_components(ref):
        assert len({int(comp[v]) for v in scc}) == 1
    assert len(set(comp.tolist())) == nx.number_strongly_connected_components(ref)
