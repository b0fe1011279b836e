import numpy as np
import pytest

from conftest import BRIDGE, BRIDGE_Q, DISJOINT, DISJOINT_Q, directed, layered, unit
from dspaths import errors, oracle
from dspaths.acceptance import _instances, _small_digraph
from dspaths.shortest_paths import Distances

DIAMOND = directed(4, unit([(0, 1), (0, 2), (1, 3), (2, 3)]))


def test_enum_paths_examples():
    D = Distances(DIAMOND)
    assert oracle.enum_paths(DIAMOND, D, 0, 3) == [(0, 1, 3), (0, 2, 3)]
    chain = directed(3, unit([(0, 1), (1, 2)]))
    assert oracle.enum_paths(chain, Distances(chain), 0, 2) == [(0, 1, 2)]


def test_enum_paths_cap():
    g = layered(5)
    D = Distances(g)
    assert len(oracle.enum_paths(g, D, 0, 15)) == 32
    with pytest.raises(errors.CapExceeded):
        oracle.enum_paths(g, D, 0, 15, cap=31)


def test_min_intersection_examples():
    r = oracle.min_intersection(BRIDGE, BRIDGE_Q)
    assert r.k == 1 and not r.internallyDisjointExists
    r = oracle.min_intersection(DISJOINT, DISJOINT_Q)
    assert r.k == 0 and r.internallyDisjointExists and r.classes == {"disjoint"}
    assert oracle.min_intersection(DISJOINT, (0, 3, 3, 5)) is None


def test_classify():
    assert oracle.classify((0, 1, 2, 3), (4, 1, 2, 5)) == "agreeing"
    assert oracle.classify((0, 1, 2, 3), (4, 2, 1, 5)) == "disagreeing"
    assert oracle.classify((0, 1, 3), (4, 1, 5)) == "singular"
    assert oracle.classify((0, 1, 2, 3, 4), (5, 3, 1, 2, 6)) == "mixed"


def test_swap_examples():
    P1, P2 = (0, 1, 2, 3), (4, 1, 2, 5)
    assert oracle.swap(P1, P2, 1, 2) == (P1, P2)
    P1, P2 = (0, 1, 6, 3, 8), (4, 1, 7, 3, 5)
    Q1, Q2 = oracle.swap(P1, P2, 1, 3)
    assert (Q1, Q2) == ((0, 1, 7, 3, 8), (4, 1, 6, 3, 5))
    assert oracle.swap(Q1, Q2, 1, 3) == (P1, P2)
    with pytest.raises(errors.PrecedenceViolated):
        oracle.swap(P1, P2, 3, 1)
    with pytest.raises(errors.PrecedenceViolated):
        oracle.swap(P1, P2, 1, 9)


def test_concordant_pairs_examples():
    assert oracle.concordant_pairs((0, 1, 2), (3, 4, 5)) == []
    assert oracle.concordant_pairs((0, 2, 3), (1, 2, 4)) == [(2, 2)]
    # two corridors met in opposite orders: a->b on P1, b->a on P2
    P1 = (0, 10, 11, 20, 21, 1)
    P2 = (2, 20, 21, 10, 11, 3)
    assert oracle.concordant_pairs(P1, P2) == [(10, 11), (20, 21)]


def test_interaction_complexity_of_a_corridor():
    P1, P2 = (0, 2, 3, 4, 5), (1, 2, 3, 4, 6)
    assert oracle.interaction_complexity(P1, P2, lambda v, w: 3 if (v, w) == (2, 4) else 0) == 3


@pytest.mark.parametrize("seed", range(8))
def test_delta_sum_equals_intersection_for_optimal_pairs(seed):
    rng = np.random.default_rng(1400 + seed)
    for g, D, q, o in _instances(rng, 6, _small_digraph(8, 18, (1, 4))):
        P1, P2 = o.witness
        gamma = oracle.interaction_complexity(P1, P2, lambda v, w: oracle.brute_delta(g, D, v, w))
        excluded = {q[0], q[1]} & {q[2], q[3]}
        assert gamma == len((set(P1) & set(P2)) - excluded)


@pytest.mark.parametrize("seed", range(8))
def test_swap_preserves_monomial_product(seed):
    rng = np.random.default_rng(1500 + seed)
    for g, D, q, _ in _instances(rng, 6, _small_digraph(8, 24, (1, 2))):
        L1 = oracle.enum_paths(g, D, q[0], q[1])
        L2 = oracle.enum_paths(g, D, q[2], q[3])
        for P1 in L1[:4]:
            for P2 in L2[:4]:
                for a, b in oracle.twin_crossing_pairs(P1, P2):
                    Q1, Q2 = oracle.swap(P1, P2, a, b)
                    before = sorted(oracle.monomial(g, P1) + oracle.monomial(g, P2))
                    after = sorted(oracle.monomial(g, Q1) + oracle.monomial(g, Q2))
                    assert before == after


def test_symbolic_polys():
    D = Distances(DIAMOND)
    F = oracle.symbolic_F(DIAMOND, D, 0, 3)
    assert len(F) == 2
    assert (F + F).is_zero()
    assert oracle.symbolic_Fdisj(DIAMOND, (0, 3, 0, 3)).is_zero()


def test_cycles():
    g = directed(3, [(0, 1, 1), (1, 2, 1), (2, 0, -2), (1, 0, 4)])
    cyc = sorted(oracle.simple_cycles(g))
    assert cyc == [(0, 1), (0, 1, 2)]
    assert oracle.cycle_weight(g, (0, 1, 2)) == 0
