"""Min-2-DSP in directed graphs with positive weights.

Two tables are evaluated at one random point:

* T[x1, y1, x2, y2] = F_disj for every quadruple, in increasing order of
  dist(x1, y1) + dist(x2, y2);
* K[v, w, k] = F_disj,k(v, t1, s2, w): pairs whose interaction complexity
  (sum of delta over concordant pairs) is at most k.

K is built as F_disj plus one correction per candidate first concordant
pair (v', w'), each a product of an F_disj value, F(v', w')^2 and a smaller
K entry with budget k - delta(v', w').
"""
import numpy as np

from ._accel import njit
from .dominators import INF_DEPTH, delta_table
from .dsp2 import DEFAULT_SEED, decide, trial_seed
from .enum_poly import EdgeAssignment, FTable
from .errors import (
    InstanceTooLarge,
    KindMismatch,
    NoIntersectingPair,
    NonPositiveWeight,
    TerminalsNotDistinct,
    UnreachableTerminal,
)
from .gf2 import gf_mul
from .shortest_paths import UNREACH, Distances

DEFAULT_MAX_N = 64


@njit
def _on(M, x, v, y):
    return M[x, v] < UNREACH and M[v, y] < UNREACH and M[x, y] < UNREACH and M[x, v] + M[v, y] == M[x, y]


@njit
def _arc_on(M, x, a, w, v, y):
    return M[x, a] < UNREACH and M[v, y] < UNREACH and M[x, y] < UNREACH and M[x, a] + w + M[v, y] == M[x, y]


@njit
def _all_pairs_fdisj(n, M, F, in_ptr, in_arcs, tail, weight, z2, quads):
    T = np.zeros((n, n, n, n), dtype=np.uint64)
    for qi in range(quads.shape[0]):
        x1 = quads[qi, 0]
        y1 = quads[qi, 1]
        x2 = quads[qi, 2]
        y2 = quads[qi, 3]
        if x1 == y1 and x2 == y2:
            T[x1, y1, x2, y2] = np.uint64(1)
            continue
        val = gf_mul(F[x1, y1], F[x2, y2])
        for v in range(n):
            if (v == x1 or v == y1) and (v == x2 or v == y2):
                continue
            if not (_on(M, x1, v, y1) and _on(M, x2, v, y2)):
                continue
            dv = gf_mul(gf_mul(F[x2, v], T[x1, v, v, y2]), F[v, y1])
            for k in range(in_ptr[v], in_ptr[v + 1]):
                e = in_arcs[k]
                a = tail[e]
                if a == x1 and a == x2:
                    continue
                if _arc_on(M, x1, a, weight[e], v, y1) and _arc_on(M, x2, a, weight[e], v, y2):
                    dv ^= gf_mul(gf_mul(z2[e], F[x2, a]), gf_mul(T[x1, a, v, y2], F[v, y1]))
            val ^= dv
        T[x1, y1, x2, y2] = val
    return T


@njit
def _min_k_table(n, M, F, T, delta, in_ptr, in_arcs, out_ptr, out_arcs, tail, head,
                 weight, z2, t1, s2, pairs, kmax):
    K = np.zeros((n, n, kmax + 1), dtype=np.uint64)
    for pi in range(pairs.shape[0]):
        x1 = pairs[pi, 0]
        y2 = pairs[pi, 1]
        y1 = t1
        x2 = s2
        if x1 == y1 and x2 == y2:
            for k in range(kmax + 1):
                K[x1, y2, k] = np.uint64(1)
            continue
        base = T[x1, y1, x2, y2]
        for k in range(kmax + 1):
            K[x1, y2, k] = base
        if M[x1, y1] >= UNREACH or M[x2, y2] >= UNREACH:
            continue
        for v in range(n):
            if (v == x1 or v == y1) and (v == x2 or v == y2):
                continue
            if not (_on(M, x1, v, y1) and _on(M, x2, v, y2)):
                continue
            for w in range(n):
                if (w == x1 or w == y1) and (w == x2 or w == y2):
                    continue
                if M[v, w] >= UNREACH:
                    continue
                if not (M[x1, v] + M[v, w] + M[w, y1] == M[x1, y1]
                        and M[x2, v] + M[v, w] + M[w, y2] == M[x2, y2]):
                    continue
                dl = delta[v, w]
                if dl > kmax:
                    continue
                fvw = F[v, w]
                sq = gf_mul(fvw, fvw)
                if sq == 0:
                    continue
                for k in range(dl, kmax + 1):
                    kk = k - dl
                    acc = gf_mul(T[x1, v, w, y2], K[w, v, kk])
                    for ia in range(in_ptr[v], in_ptr[v + 1]):
                        ea = in_arcs[ia]
                        a = tail[ea]
                        if a == x1 and a == x2:
                            continue
                        if not (_arc_on(M, x1, a, weight[ea], v, y1) and _arc_on(M, x2, a, weight[ea], v, y2)):
                            continue
                        acc ^= gf_mul(z2[ea], gf_mul(T[x1, a, w, y2], K[w, a, kk]))
                    for ib in range(out_ptr[w], out_ptr[w + 1]):
                        eb = out_arcs[ib]
                        b = head[eb]
                        if b == y1 and b == y2:
                            continue
                        if not (_arc_on(M, x1, w, weight[eb], b, y1) and _arc_on(M, x2, w, weight[eb], b, y2)):
                            continue
                        acc ^= gf_mul(z2[eb], gf_mul(T[x1, v, b, y2], K[b, v, kk]))
                        for ia in range(in_ptr[v], in_ptr[v + 1]):
                            ea = in_arcs[ia]
                            a = tail[ea]
                            if a == x1 and a == x2:
                                continue
                            if not (_arc_on(M, x1, a, weight[ea], v, y1)
                                    and _arc_on(M, x2, a, weight[ea], v, y2)):
                                continue
                            acc ^= gf_mul(gf_mul(z2[ea], z2[eb]), gf_mul(T[x1, a, b, y2], K[b, a, kk]))
                    K[x1, y2, k] ^= gf_mul(sq, acc)
    return K


class MinKContext:
    """Evaluated tables for one random assignment."""

    def __init__(self, g, D, seed, t1, s2):
        n = g.n
        a = g.arcs
        self.g, self.D = g, D
        self.M = D.matrix
        self.assignment = EdgeAssignment(g, seed)
        self.F = FTable(g, D, self.assignment).matrix()
        z = self.assignment.arc_values
        self.z2 = np.array([gf_mul(np.uint64(x), np.uint64(x)) for x in z], dtype=np.uint64)
        self.delta = delta_table(g, D)
        self.delta = np.where(self.delta >= INF_DEPTH, n + 1, self.delta)
        self.T = all_pairs_fdisj(g, D, self.F, self.z2, self.M)
        M = self.M
        vs = np.arange(n)
        # tuples (v, t1, s2, w) by dist(v, t1) + dist(s2, w); unreachable ones last
        dv = M[vs, t1]
        dw = M[s2, vs]
        key = np.add.outer(np.minimum(dv, UNREACH), np.minimum(dw, UNREACH))
        order = np.argsort(key, axis=None, kind="stable")
        self.pairs = np.stack(np.unravel_index(order, (n, n)), axis=1).astype(np.int64)
        self.K = _min_k_table(n, M, self.F, self.T, self.delta.astype(np.int64),
                              a.in_ptr, a.in_arcs, a.out_ptr, a.out_arcs, a.tail, a.head,
                              a.weight, self.z2, int(t1), int(s2), self.pairs, n)

    def fdisj_k(self, v, w, k):
        return self.K[v, w, k]


def all_pairs_fdisj(g, D, F, z2, M=None):
    """Dense F_disj table over V^4 (F is the dense F matrix)."""
    n = g.n
    a = g.arcs
    if M is None:
        M = D.matrix
    Mc = np.minimum(M, UNREACH)
    s1 = Mc[:, :, None, None] + Mc[None, None, :, :]
    order = np.argsort(s1, axis=None, kind="stable")
    quads = np.stack(np.unravel_index(order, (n, n, n, n)), axis=1).astype(np.int64)
    return _all_pairs_fdisj(n, M, F, a.in_ptr, a.in_arcs, a.tail, a.weight, z2, quads)


def check_min_query(g, D, q, max_n=DEFAULT_MAX_N, force_large=False):
    if not g.directed:
        raise KindMismatch("expected a directed graph")
    if len(set(q)) != 4:
        raise TerminalsNotDistinct("Min-2-DSP needs four distinct terminals")
    for v in q:
        if not 0 <= v < g.n:
            raise UnreachableTerminal(f"terminal {v} is not a vertex")
    s1, t1, s2, t2 = q
    if D.dist(s1, t1) >= UNREACH or D.dist(s2, t2) >= UNREACH:
        raise UnreachableTerminal("a target is not reachable from its source")


def min_k(g, s1, t1, s2, t2, seed=DEFAULT_SEED, trials=1, max_n=DEFAULT_MAX_N, force_large=False):
    """Minimum |V(P1) & V(P2)| over shortest-path pairs."""
    if not g.directed:
        raise KindMismatch("expected a directed graph")
    if g.m and g.weights.min() <= 0:
        raise NonPositiveWeight("directed Min-2-DSP requires strictly positive weights")
    if g.n > max_n and not force_large:
        raise InstanceTooLarge(f"n={g.n} exceeds the cap of {max_n} for the dense quadruple table; use --force-large")
    q = (int(s1), int(t1), int(s2), int(t2))
    D = Distances(g)
    check_min_query(g, D, q)
    if decide(g, *q, seed=seed, trials=trials, D=D):
        return 0
    best = None
    for trial in range(max(1, int(trials))):
        ctx = MinKContext(g, D, trial_seed(seed, trial), q[1], q[2])
        row = ctx.K[q[0], q[3]]
        nz = [k for k in range(1, g.n + 1) if row[k] != 0]
        if nz and (best is None or nz[0] < best):
            best = nz[0]
    if best is None:
        raise NoIntersectingPair("no k in [1, n] gave a nonzero evaluation")
    return best
