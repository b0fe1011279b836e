"""Min-2-DSP on undirected graphs with positive weights.

The solver runs on the bidirected copy of the graph (one variable per edge
shared by both orientations) and splits into three regimes:

* k* = 0: the directed 2-DSP test on the bidirected graph.
* k* = 1: a per-vertex polynomial F_v = A_v - (X_v + Y_v) that enumerates
  pairs meeting only at v, built from F rows of the four terminals.
* k* >= 2: the shared-edge component machinery used for DAGs, once on the
  edges both pairs traverse the same way (agreeing pairs) and once with
  s2, t2 exchanged (disagreeing pairs).
"""
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .checks import witness_problems
from .dsp2 import DEFAULT_SEED, _tight_path, decide, trial_seed
from .enum_poly import EdgeAssignment, FTable
from .errors import (
    FlowInfeasible,
    InternalFlowInfeasible,
    KindMismatch,
    NoIntersectingPair,
    NonPositiveWeight,
    TerminalsNotDistinct,
    UnreachableTerminal,
)
from .flow import disjoint_paths
from .gf2 import gf_mul
from .graph import bidirect
from .min2dsp_dag import INF, PairDistances, gadgets
from .shortest_paths import UNREACH, Distances


@dataclass
class SignedSharedEdges:
    """Shared tight edges as arc ids of the bidirected graph.

    ``plus`` holds edges both pairs traverse in the same direction, ``minus``
    edges they traverse in opposite directions; each arc is oriented the way
    pair 1 uses it.
    """
    plus: np.ndarray
    minus: np.ndarray


def split_shared_edges(g, D, q):
    """Partition the edges on shortest paths of both pairs by orientation agreement."""
    a = g.arcs
    P = PairDistances(g, D, q)
    P_rev = PairDistances(g, D, (q[0], q[1], q[3], q[2]))
    plus = np.flatnonzero(P.arc_on[0] & P.arc_on[1])
    # pair 2 walks the arc backwards: the reverse arc is tight for s2 -> t2,
    # i.e. the arc itself is tight for t2 -> s2
    minus = np.flatnonzero(P.arc_on[0] & P_rev.arc_on[1])
    return SignedSharedEdges(plus, minus)


@njit
def _singular_kernel(n, tail, head, weight, z, r, f, on_both):
    # r[i], f[i]: distance and F rows of terminal i in (s1, t1, s2, t2)
    z2 = np.empty(z.size, dtype=np.uint64)
    for e in range(z.size):
        z2[e] = gf_mul(z[e], z[e])
    # R_v(x, y) for (x, y) in (s1, s2), (t1, t2), (s1, t2)
    pairs = ((0, 2), (1, 3), (0, 3))
    R = np.zeros((3, n), dtype=np.uint64)
    for p in range(3):
        i, j = pairs[p]
        for v in range(n):
            R[p, v] = gf_mul(f[i, v], f[j, v])
        for e in range(tail.size):
            u = tail[e]
            v = head[e]
            w = weight[e]
            if r[i, u] < UNREACH and r[j, u] < UNREACH and r[i, u] + w == r[i, v] and r[j, u] + w == r[j, v]:
                R[p, v] ^= gf_mul(z2[e], gf_mul(f[i, u], f[j, u]))
    X = np.zeros(n, dtype=np.uint64)
    Y = np.zeros(n, dtype=np.uint64)
    for e in range(tail.size):
        u = tail[e]
        v = head[e]
        w = weight[e]
        if r[0, u] < UNREACH and r[3, u] < UNREACH and r[0, u] + w == r[0, v] and r[3, u] + w == r[3, v]:
            # P1 enters v from u and P2 leaves v towards u
            t = gf_mul(gf_mul(f[0, u], f[1, v]), gf_mul(f[2, v], f[3, u]))
            X[v] ^= gf_mul(z2[e], t)
        if r[1, u] < UNREACH and r[2, u] < UNREACH and r[1, u] + w == r[1, v] and r[2, u] + w == r[2, v]:
            # P1 leaves v towards u and P2 enters v from u
            Y[v] ^= gf_mul(z2[e], gf_mul(f[1, u], f[2, u]))
    out = np.zeros(n, dtype=np.uint64)
    for v in range(n):
        if on_both[v]:
            out[v] = gf_mul(R[0, v], R[1, v]) ^ X[v] ^ gf_mul(R[2, v], Y[v])
    return out


def singular_values(g, D, q, assignment):
    """F_v evaluated for every v (zero off the shortest paths of either pair)."""
    F = FTable(g, D, assignment)
    a = g.arcs
    r = np.stack([D.row(x) for x in q])
    f = np.stack([F.row(x) for x in q])
    on_both = PairDistances(g, D, q).both
    return _singular_kernel(g.n, a.tail, a.head, a.weight, assignment.arc_values, r, f, on_both)


def singular_k1(g, D, assignment, q):
    """Smallest v with F_v != 0, or None when no pair meets in a single vertex."""
    hits = np.flatnonzero(singular_values(g, D, q, assignment))
    return int(hits[0]) if hits.size else None


def report_singular(g, D, v, q):
    """Shortest P1, P2 meeting exactly at v, via four disjoint legs out of v."""
    a = g.arcs
    r = D.row(v)
    ok = (r[a.tail] < UNREACH) & (r[a.tail] + a.weight == r[a.head])
    arcs = list(zip(a.tail[ok].tolist(), a.head[ok].tolist()))
    sink = g.n
    ends = [x for x in dict.fromkeys(q) if x != v]
    arcs += [(x, sink) for x in ends]
    legs = {v: [v]}
    for p in disjoint_paths(arcs, v, sink, len(ends)):
        legs[p[-2]] = p[:-1]
    if any(x not in legs for x in ends):
        raise FlowInfeasible(f"no four disjoint shortest legs out of {v}")
    s1, t1, s2, t2 = q
    P1 = legs[s1][::-1] + legs[t1][1:]
    P2 = legs[s2][::-1] + legs[t2][1:]
    if witness_problems(g, D, q, P1, P2, k=1):
        raise FlowInfeasible(f"legs out of {v} do not form a single-meeting pair")
    return P1, P2


def _lift(g, D, gad, lane, i, q):
    """Graph path of pair i from a gadget lane (local ids of B, entry to exit)."""
    body = [gad.B[x] for x in lane]
    s, t = (q[0], q[1]) if i == 0 else (q[2], q[3])
    x = gad.entry[i][body[0]]
    z = gad.exit[i][body[-1]]
    head = [] if x is None else _tight_path(g, D, s, x)
    tail = [] if z is None else _tight_path(g, D, z, t)
    return head + body + tail


def min_agreeing(g, D, q):
    """(k, (P1, P2)) over pairs with at least two shared vertices, in the same order.

    A gadget pair sharing two vertices of its component lifts to a graph
    pair with exactly the same intersection: every lifted pair meeting twice
    in the same order is agreeing, and agreeing pairs meet inside one
    component.  Gadget pairs meeting once need not lift faithfully, since
    their outside legs can cross; the k = 1 regime is handled separately.
    """
    best = (INF, None, None, None)
    for gad in gadgets(g, D, q, singletons=False):
        c, u, v = gad.least_double()
        if c < best[0]:
            best = (c, gad, u, v)
    k, gad, u, v = best
    if gad is None:
        return INF, None
    L1, L2 = gad.double_pair(u, v)
    return k, (_lift(g, D, gad, L1, 0, q), _lift(g, D, gad, L2, 1, q))


def min_disagreeing(g, D, q):
    """Same for pairs meeting in reversed order: agreeing once s2, t2 are exchanged."""
    s1, t1, s2, t2 = q
    k, paths = min_agreeing(g, D, (s1, t1, t2, s2))
    if paths is None:
        return k, None
    return k, (paths[0], paths[1][::-1])


def check_undirected_query(g, q):
    if g.directed:
        raise KindMismatch("expected an undirected graph")
    if g.m and int(g.weights.min()) <= 0:
        raise NonPositiveWeight("undirected solver needs strictly positive weights")
    if len(set(q)) != 4:
        raise TerminalsNotDistinct("Min-2-DSP needs four distinct terminals")
    for x in q:
        if not 0 <= x < g.n:
            raise UnreachableTerminal(f"terminal {x} is not a vertex")


def solve_undirected(g, s1, t1, s2, t2, seed=DEFAULT_SEED, trials=1):
    """(k*, (P1, P2) or None); witnesses are attached whenever k* >= 1."""
    q = (int(s1), int(t1), int(s2), int(t2))
    check_undirected_query(g, q)
    B = bidirect(g)
    D = Distances(B)
    if D.dist(q[0], q[1]) >= UNREACH or D.dist(q[2], q[3]) >= UNREACH:
        raise UnreachableTerminal("a target is not reachable from its source")
    if decide(B, *q, seed=seed, trials=trials, D=D):
        return 0, None
    failure = None
    for trial in range(max(1, int(trials)) + 2):
        v = singular_k1(B, D, EdgeAssignment(B, trial_seed(seed, trial)), q)
        if v is None:
            failure = None
            break
        try:
            return 1, report_singular(B, D, v, q)
        except FlowInfeasible as exc:
            failure = exc
    if failure is not None:
        raise failure
    best = min([min_agreeing(B, D, q), min_disagreeing(B, D, q)], key=lambda r: r[0])
    k, paths = best
    if k == INF:
        raise NoIntersectingPair("no vertex lies on intersecting shortest paths of both pairs")
    problems = witness_problems(B, D, q, paths[0], paths[1], k=k)
    if problems:
        raise InternalFlowInfeasible("; ".join(problems))
    return k, paths
