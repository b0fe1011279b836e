import numpy as np
import pytest

from conftest import STAR, STAR_Q, UCORRIDOR, UCORRIDOR_Q, undirected, unit
from dspaths import errors, oracle
from dspaths.acceptance import _instances, _small_undirected
from dspaths.checks import witness_problems
from dspaths.enum_poly import EdgeAssignment
from dspaths.graph import bidirect, gen_random
from dspaths.min2dsp_dag import INF
from dspaths.min2dsp_undirected import (min_agreeing, min_disagreeing, report_singular,
                                        singular_k1, solve_undirected, split_shared_edges)
from dspaths.shortest_paths import Distances


def _bd(g):
    B = bidirect(g)
    return B, Distances(B)


def _arc_pairs(B, ids):
    a = B.arcs
    return sorted((int(a.tail[e]), int(a.head[e])) for e in ids)


def test_even_cycle_alternating_terminals():
    g = undirected(6, unit([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]))
    q = (0, 1, 2, 3)
    assert oracle.min_intersection(g, q).k == 0
    assert solve_undirected(g, *q) == (0, None)


def test_star():
    assert oracle.min_intersection(STAR, STAR_Q).k == 1
    k, (P1, P2) = solve_undirected(STAR, *STAR_Q)
    assert k == 1 and set(P1) & set(P2) == {0}


def test_shared_corridor():
    assert oracle.min_intersection(UCORRIDOR, UCORRIDOR_Q).k == 2
    k, (P1, P2) = solve_undirected(UCORRIDOR, *UCORRIDOR_Q)
    assert k == 2 and set(P1) & set(P2) == {2, 3}


def test_four_cycle_needs_two():
    # every pair of shortest paths meets twice, in opposite orders
    g = undirected(4, unit([(0, 1), (1, 2), (2, 3), (3, 0)]))
    q = (0, 2, 3, 1)
    assert oracle.min_intersection(g, q).k == 2
    k, paths = solve_undirected(g, *q)
    assert k == 2
    assert not witness_problems(bidirect(g), Distances(bidirect(g)), q, *paths, k=2)


def test_errors():
    with pytest.raises(errors.KindMismatch):
        solve_undirected(bidirect(STAR), *STAR_Q)
    with pytest.raises(errors.TerminalsNotDistinct):
        solve_undirected(STAR, 1, 2, 1, 3)
    with pytest.raises(errors.UnreachableTerminal):
        solve_undirected(undirected(4, unit([(0, 1), (2, 3)])), 0, 2, 1, 3)


def test_split_agreeing_and_disagreeing():
    B, D = _bd(UCORRIDOR)
    sp = split_shared_edges(B, D, UCORRIDOR_Q)
    assert _arc_pairs(B, sp.plus) == [(2, 3)] and sp.minus.size == 0
    s1, t1, s2, t2 = UCORRIDOR_Q
    sw = split_shared_edges(B, D, (s1, t1, t2, s2))
    assert _arc_pairs(B, sw.minus) == [(2, 3)] and sw.plus.size == 0


@pytest.mark.parametrize("seed", range(10))
def test_swap_exchanges_plus_and_minus(seed):
    rng = np.random.default_rng(1100 + seed)
    for g, _, q, _ in _instances(rng, 6, _small_undirected(10)):
        B, D = _bd(g)
        a = _arc_pairs(B, split_shared_edges(B, D, q).plus)
        b = _arc_pairs(B, split_shared_edges(B, D, q).minus)
        sw = split_shared_edges(B, D, (q[0], q[1], q[3], q[2]))
        assert _arc_pairs(B, sw.plus) == b and _arc_pairs(B, sw.minus) == a


def test_agreeing_corridor_and_none_disagreeing():
    B, D = _bd(UCORRIDOR)
    k, (P1, P2) = min_agreeing(B, D, UCORRIDOR_Q)
    assert k == 2 and set(P1) & set(P2) == {2, 3}
    assert min_disagreeing(B, D, UCORRIDOR_Q) == (INF, None)


def test_disagreeing_corridor():
    q = (0, 4, 5, 1)
    assert oracle.min_intersection(UCORRIDOR, q).k == 2
    B, D = _bd(UCORRIDOR)
    k, (P1, P2) = min_disagreeing(B, D, q)
    assert k == 2 and P2 == [5, 3, 2, 1]
    assert min_agreeing(B, D, q) == (INF, None)


def test_min_disagreeing_swap_involution():
    B, D = _bd(UCORRIDOR)
    s1, t1, s2, t2 = UCORRIDOR_Q
    k, (P1, P2) = min_disagreeing(B, D, (s1, t1, t2, s2))
    assert (k, (P1, P2[::-1])) == min_agreeing(B, D, UCORRIDOR_Q)


def test_singular_on_star_and_disjoint():
    B, D = _bd(STAR)
    assert singular_k1(B, D, EdgeAssignment(B, 1), STAR_Q) == 0
    g = undirected(6, unit([(0, 1), (1, 2), (3, 4), (4, 5)]))
    B, D = _bd(g)
    assert singular_k1(B, D, EdgeAssignment(B, 1), (0, 2, 3, 5)) is None


def test_report_singular_star_is_the_four_direct_edges():
    B, D = _bd(STAR)
    assert report_singular(B, D, 0, STAR_Q) == ([1, 0, 2], [3, 0, 4])


def test_report_singular_wheel():
    # hub 0, rim 1..8; terminals on alternate rim vertices two steps apart
    rim = [(i, i % 8 + 1, 2) for i in range(1, 9)]
    spokes = [(0, i, 1) for i in range(1, 9)]
    g = undirected(9, rim + spokes)
    q = (1, 5, 3, 7)
    B, D = _bd(g)
    P1, P2 = report_singular(B, D, 0, q)
    assert not witness_problems(B, D, q, P1, P2, k=1)


@pytest.mark.parametrize("seed", range(20))
def test_solver_matches_oracle(seed):
    rng = np.random.default_rng(1200 + seed)
    for g, _, q, o in _instances(rng, 10, _small_undirected(10)):
        k, paths = solve_undirected(g, *q)
        assert k == o.k, q
        if k:
            B, D = _bd(g)
            assert not witness_problems(B, D, q, *paths, k=k)


@pytest.mark.parametrize("seed", range(10))
def test_agreeing_minimum_matches_oracle_class(seed):
    rng = np.random.default_rng(1300 + seed)
    for g, _, q, o in _instances(rng, 8, _small_undirected(9)):
        B, D = _bd(g)
        k, _ = min_agreeing(B, D, q)
        assert k == o.best_by_class.get("agreeing", INF), q
        k, _ = min_disagreeing(B, D, q)
        assert k == o.best_by_class.get("disagreeing", INF), q
