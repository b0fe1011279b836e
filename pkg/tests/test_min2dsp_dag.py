import numpy as np
import pytest

from conftest import BRIDGE, BRIDGE_Q, CORRIDOR, CORRIDOR_Q, DISJOINT, DISJOINT_Q, directed, unit
from dspaths import errors, oracle
from dspaths.acceptance import _instances, _small_dag
from dspaths.checks import witness_problems
from dspaths.graph import gen_random
from dspaths.min2dsp_dag import (INF, Gadget, PairDistances, components, dag_alphas, gadgets,
                                 report_via_subproblem, solve_dag)
from dspaths.shortest_paths import Distances


def test_disjoint_chains():
    assert solve_dag(DISJOINT, *DISJOINT_Q) == (0, None)


def test_single_meeting_vertex():
    k, (P1, P2) = solve_dag(BRIDGE, *BRIDGE_Q)
    assert k == 1 and set(P1) & set(P2) == {2}


def test_corridor():
    k, (P1, P2) = solve_dag(CORRIDOR, *CORRIDOR_Q)
    assert k == 3 and set(P1) & set(P2) == {2, 3, 4}
    assert solve_dag(CORRIDOR, *CORRIDOR_Q, report=False) == (3, None)


def test_terminal_of_one_pair_on_the_other():
    # s2 = 1 sits on the only s1 -> t1 path
    g = directed(4, unit([(0, 1), (1, 2), (1, 3)]))
    q = (0, 2, 1, 3)
    k, paths = solve_dag(g, *q)
    assert k == oracle.min_intersection(g, q).k == 1


def test_errors():
    with pytest.raises(errors.NotADag):
        solve_dag(directed(4, unit([(0, 1), (1, 0), (2, 3)])), 0, 1, 2, 3)
    with pytest.raises(errors.TerminalsNotDistinct):
        solve_dag(BRIDGE, 0, 3, 0, 4)
    with pytest.raises(errors.UnreachableTerminal):
        solve_dag(BRIDGE, 3, 0, 1, 4)
    with pytest.raises(errors.KindMismatch):
        solve_dag(gen_random(5, 4, (1, 2), "undirected", 0), 0, 1, 2, 3)


def test_components_are_weak():
    labels = components(5, np.array([0, 2]), np.array([1, 1]))
    assert labels[0] == labels[1] == labels[2] and len(set(labels.tolist())) == 3


def test_singleton_gadget_skeleton():
    gad = Gadget([7], [], ({}, {}), ({}, {}))
    assert gad.n == 7 and len(gad.arcs) == 4
    assert gad.alpha() == {7: INF}


def test_corridor_gadget_cut_vertices():
    D = Distances(CORRIDOR)
    gs = [x for x in gadgets(CORRIDOR, D, CORRIDOR_Q) if isinstance(x, Gadget)]
    assert len(gs) == 1 and sorted(gs[0].B) == [2, 3, 4]
    assert gs[0].alpha() == {2: 3, 3: 3, 4: 3}


@pytest.mark.parametrize("seed", range(12))
def test_optimal_intersections_lie_in_one_component(seed):
    rng = np.random.default_rng(800 + seed)
    for g, D, q, o in _instances(rng, 10, _small_dag(9, [(1, 1), (1, 3)])):
        if o.k < 2:
            continue
        P = PairDistances(g, D, q)
        a = g.arcs
        shared = np.flatnonzero(P.arc_on[0] & P.arc_on[1])
        labels = components(g.n, a.tail[shared], a.head[shared])
        common = set(o.witness[0]) & set(o.witness[1])
        assert len({int(labels[v]) for v in common}) == 1


@pytest.mark.parametrize("seed", range(15))
def test_solver_matches_oracle(seed):
    rng = np.random.default_rng(900 + seed)
    for g, D, q, o in _instances(rng, 12, _small_dag(10, [(1, 1), (1, 4), (-3, 5)])):
        k, paths = solve_dag(g, *q)
        assert k == o.k, q
        if k:
            assert not witness_problems(g, D, q, *paths, k=k)


@pytest.mark.parametrize("seed", range(6))
def test_subproblem_report_achieves_alpha(seed):
    rng = np.random.default_rng(950 + seed)
    for g, D, q, o in _instances(rng, 8, _small_dag(9, [(1, 2)])):
        if o.disjoint_exists:
            continue
        for v, k in dag_alphas(g, D, q).items():
            if k == INF:
                continue
            P1, P2 = report_via_subproblem(g, D, q, v)
            assert v in P1 and v in P2
            assert not witness_problems(g, D, q, P1, P2, k=k)
