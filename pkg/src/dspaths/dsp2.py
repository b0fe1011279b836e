"""2-DSP in weighted digraphs without negative or zero cycles.

F_disj(x1, y1, x2, y2) enumerates pairs of shortest paths that share no
vertex outside {x1, y1} & {x2, y2}.  It equals F(x1, y1) F(x2, y2) minus a
sum of per-vertex corrections D_v, where D_v enumerates (modulo twin-crossing
cancellations) the pairs whose first shared vertex is v:

    D_v = F(x2, v) Fd(x1, v, v, y2) F(v, y1)
          - sum over shared tight arcs (a, v) of z_av^2 F(x2, a) Fd(x1, a, v, y2) F(v, y1)

An arc leaving a common source (a == x1 == x2) is left out of that sum: the
pairs that share it meet first at v and must stay in D_v.

For the query every subproblem has the form (s1, ., ., t2), and processing
vertices in topological order of the tight DAG out of s1 makes all of them
available when needed.
"""
import numpy as np

from . import gf2
from .checks import witness_problems
from .errors import (
    KindMismatch,
    MissingSubproblem,
    ReportingFailed,
    UnreachableTerminal,
)
from .enum_poly import EdgeAssignment, FTable
from .flow import disjoint_paths
from .gf2 import mul as gf_mul
from .dominators import cut_vertices
from .shortest_paths import UNREACH, Distances, TightDag, strong_components

DEFAULT_SEED = 0x5EED_2D5B


def trial_seed(seed, trial):
    if trial == 0:
        return int(seed)
    return int(np.random.SeedSequence([int(seed) & (2**64 - 1), trial]).generate_state(1, np.uint64)[0])


def _mul(*xs):
    acc = np.uint64(1)
    for x in xs:
        acc = gf_mul(acc, np.uint64(x))
    return acc


def check_query(g, D, q):
    if not g.directed:
        raise KindMismatch("2-DSP solver expects a directed graph")
    for v in q:
        if not 0 <= v < g.n:
            raise UnreachableTerminal(f"terminal {v} is not a vertex")
    s1, t1, s2, t2 = q
    if D.dist(s1, t1) >= UNREACH:
        raise UnreachableTerminal(f"t1={t1} is not reachable from s1={s1}")
    if D.dist(s2, t2) >= UNREACH:
        raise UnreachableTerminal(f"t2={t2} is not reachable from s2={s2}")


def build_order(g, D, s1, t2):
    """Tuple list: for each v in s1's tight order, arcs (a, v) then (s1, v, v, t2)."""
    a = g.arcs
    out = []
    for v in D.order_from(s1).tolist():
        for e in a.into(v).tolist():
            out.append((s1, int(a.tail[e]), v, t2))
        out.append((s1, v, v, t2))
    return out


class QueryFdisj:
    """Grouped evaluation of F_disj(s1, ., ., t2) restricted to what the query needs.

    Every vertex that matters lies in I = V(s1, t1) & V(s2, t2).  A recursion
    candidate u for vertex v closes a cycle through v, so distance and F
    rows are only needed from s1, s2 and I-vertices that share a strong
    component with another I-vertex.
    """

    def __init__(self, g, D, F, q):
        self.g, self.D, self.F, self.q = g, D, F, q
        s1, t1, s2, t2 = q
        a = g.arcs
        self.z2 = np.array([gf_mul(z, z) for z in F.assignment.arc_values], dtype=np.uint64) \
            if a.m else np.zeros(0, dtype=np.uint64)
        r1, c1, r2, c2 = D.row(s1), D.col(t1), D.row(s2), D.col(t2)
        F.row(s1), F.row(s2), F.col(t1), F.col(t2)
        self.d1 = int(r1[t1])
        self.d2 = int(r2[t2])
        on1 = (r1 < UNREACH) & (c1 < UNREACH) & (r1 + c1 == self.d1)
        on2 = (r2 < UNREACH) & (c2 < UNREACH) & (r2 + c2 == self.d2)
        inI = on1 & on2
        self.inI = inI
        order = D.order_from(s1)
        self.order = order[inI[order]]
        if self.order.size > 1:
            comp = strong_components(g)
            labels = comp[self.order]
            uniq, counts = np.unique(labels, return_counts=True)
            big = set(uniq[counts > 1].tolist())
            self.comp = comp
            self.cyclic = {int(v) for v in self.order if int(comp[v]) in big}
        else:
            self.comp = None
            self.cyclic = set()
        # arcs inside I, tight for the s1 prefix
        tl, hd, w = a.tail, a.head, a.weight
        inside = inI[tl] & inI[hd]
        pref = inside & (r1[tl] + w == r1[hd])
        self.in_arcs = {}
        for e in np.flatnonzero(pref).tolist():
            self.in_arcs.setdefault(int(hd[e]), []).append(e)
        self.fvv = {}
        self.fav = {}

    def _fav(self, e):
        try:
            return self.fav[e]
        except KeyError:
            raise MissingSubproblem(f"F_disj for arc {e} requested before it was computed") from None

    def _fvv(self, v):
        try:
            return self.fvv[v]
        except KeyError:
            raise MissingSubproblem(f"F_disj(s1, {v}, {v}, t2) requested before it was computed") from None

    def run(self):
        g, D, F = self.g, self.D, self.F
        s1, t1, s2, t2 = self.q
        a = g.arcs
        r1 = D.row(s1)
        c2 = D.col(t2)
        for v in self.order.tolist():
            arcs_v = self.in_arcs.get(v, [])
            G = {}
            if v in self.cyclic:
                rv = D.row(v)
                Fv = F.row(v)
                cv = int(self.comp[v])
                cands = [u for u in self.cyclic
                         if u != v and int(self.comp[u]) == cv
                         and rv[u] < UNREACH and rv[u] + c2[u] == c2[v]
                         and self._before(u, v, r1)]
                for u in cands:
                    # S_v(u): shared tail of every D_u(s1, a, v, t2), independent of a
                    s = np.uint64(0)
                    for e in self.in_arcs.get(u, []):
                        b = int(a.tail[e])
                        if b == v == s1:
                            continue
                        if rv[b] < UNREACH and rv[b] + int(a.weight[e]) + c2[u] == c2[v]:
                            s ^= _mul(self.z2[e], Fv[b], self._fav(e))
                    G[u] = gf_mul(Fv[u], self._fvv(u)) ^ s
            for e in arcs_v:
                x = int(a.tail[e])
                self.fav[e] = self._corrected(x, v, G, r1)
            if v == s1 and v == t2:
                self.fvv[v] = np.uint64(1)
            else:
                self.fvv[v] = self._corrected(v, v, G, r1)
        return self.query_value()

    def _before(self, u, v, r1):
        # u on a shortest s1 -> v path
        du = self.D.row(u)[v]
        return du < UNREACH and r1[u] + du == r1[v]

    def _corrected(self, y1, x2, G, r1):
        """F_disj(s1, y1, x2, t2) = F(s1, y1) F(x2, t2) - sum_u G(u) F(u, y1)."""
        s1, _, _, t2 = self.q
        val = gf_mul(self.F(s1, y1), self.F(x2, t2))
        excl = {s1, y1} & {x2, t2}
        for u, gu in G.items():
            if u in excl:
                continue
            ru = self.D.row(u)
            if ru[y1] < UNREACH and r1[u] + ru[y1] == r1[y1]:
                val ^= gf_mul(gu, self.F.row(u)[y1])
        return val

    def query_value(self):
        s1, t1, s2, t2 = self.q
        F, D = self.F, self.D
        a = self.g.arcs
        c1 = D.col(t1)
        r2 = D.row(s2)
        total = gf_mul(F(s1, t1), F(s2, t2))
        excl = {s1, t1} & {s2, t2}
        for v in self.order.tolist():
            if v in excl:
                continue
            fv1 = F.col(t1)[v]
            dv = _mul(F(s2, v), self._fvv(v), fv1)
            for e in self.in_arcs.get(v, []):
                x = int(a.tail[e])
                w = int(a.weight[e])
                if x == s1 == s2:
                    continue
                if c1[v] + w == c1[x] and r2[x] + w == r2[v]:
                    dv ^= _mul(self.z2[e], F(s2, x), self._fav(e), fv1)
            total ^= dv
        return total


class NaiveFdisj:
    """Memoised F_disj on arbitrary quadruples, straight from the recurrence.

    Needs full distance and F tables; intended for small graphs and tests.
    """

    def __init__(self, g, D, F):
        self.g, self.D, self.F = g, D, F
        self.M = D.matrix
        self.a = g.arcs
        self.memo = {}
        self.active = set()
        self.z2 = np.array([gf_mul(z, z) for z in F.assignment.arc_values], dtype=np.uint64) \
            if self.a.m else np.zeros(0, dtype=np.uint64)

    def on_sp(self, x, v, y):
        M = self.M
        return M[x, y] < UNREACH and M[x, v] < UNREACH and M[v, y] < UNREACH and M[x, v] + M[v, y] == M[x, y]

    def arc_on_sp(self, x, e, y):
        M = self.M
        u, v = int(self.a.tail[e]), int(self.a.head[e])
        return (M[x, y] < UNREACH and M[x, u] < UNREACH and M[v, y] < UNREACH
                and M[x, u] + int(self.a.weight[e]) + M[v, y] == M[x, y])

    def D_v(self, x1, y1, x2, y2, v):
        if not (self.on_sp(x1, v, y1) and self.on_sp(x2, v, y2)):
            return np.uint64(0)
        F = self.F
        val = _mul(F(x2, v), self(x1, v, v, y2), F(v, y1))
        for e in self.a.into(v).tolist():
            x = int(self.a.tail[e])
            if x == x1 == x2:
                continue
            if self.arc_on_sp(x1, e, y1) and self.arc_on_sp(x2, e, y2):
                val ^= _mul(self.z2[e], F(x2, x), self(x1, x, v, y2), F(v, y1))
        return val

    def __call__(self, x1, y1, x2, y2):
        key = (x1, y1, x2, y2)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if key in self.active:
            raise MissingSubproblem(f"cyclic dependency at {key}")
        if x1 == y1 and x2 == y2:
            self.memo[key] = np.uint64(1)
            return self.memo[key]
        self.active.add(key)
        val = gf_mul(self.F(x1, y1), self.F(x2, y2))
        if self.M[x1, y1] < UNREACH and self.M[x2, y2] < UNREACH:
            excl = {x1, y1} & {x2, y2}
            for v in range(self.g.n):
                if v not in excl:
                    val ^= self.D_v(x1, y1, x2, y2, v)
        self.active.discard(key)
        self.memo[key] = val
        return val


def eval_Dv(ctx, x1, y1, x2, y2, v):
    """D_v for a NaiveFdisj context."""
    return ctx.D_v(x1, y1, x2, y2, v)


def fdisj_value(g, D, q, seed, naive=False):
    """Evaluated F_disj(s1, t1, s2, t2) at the assignment drawn from ``seed``."""
    F = FTable(g, D, EdgeAssignment(g, seed))
    if naive:
        return NaiveFdisj(g, D, F)(*q)
    return QueryFdisj(g, D, F, q).run()


def _two_copies(g, D, s, t):
    """Do two distinct internally disjoint shortest s -> t paths exist (or a trivial one)?"""
    if s == t:
        return True
    a = g.arcs
    r, c = D.row(s), D.col(t)
    d = r[t]
    tight = []
    for e in range(a.m):
        u, v, w = int(a.tail[e]), int(a.head[e]), int(a.weight[e])
        if r[u] < UNREACH and c[v] < UNREACH and r[u] + w + c[v] == d:
            if u == s and v == t:
                return True
            tight.append((u, v))
    return len(disjoint_paths(tight, s, t, 2)) >= 2


def _forced_meeting(g, D, q):
    """Is some vertex on every shortest path of both pairs (shared terminals aside)?"""
    s1, t1, s2, t2 = q
    c1 = cut_vertices(TightDag(g, D, s1), s1, t1)
    c2 = cut_vertices(TightDag(g, D, s2), s2, t2)
    return bool((set(c1) & set(c2)) - ({s1, t1} & {s2, t2}))


def decide(g, s1, t1, s2, t2, seed=DEFAULT_SEED, trials=1, D=None):
    """True iff internally vertex-disjoint shortest paths exist (one-sided error)."""
    if D is None:
        D = Distances(g)
    q = (int(s1), int(t1), int(s2), int(t2))
    check_query(g, D, q)
    if (q[0], q[1]) == (q[2], q[3]):
        # every pair (P, Q) meets its mirror (Q, P) with the same monomial: the
        # polynomial cancels identically, so decide this case combinatorially
        return _two_copies(g, D, q[0], q[1])
    if _forced_meeting(g, D, q):
        return False
    for trial in range(max(1, int(trials))):
        if fdisj_value(g, D, q, trial_seed(seed, trial)) != 0:
            return True
    return False


def _tight_path(g, D, s, t):
    """Lexicographically smallest shortest s -> t path (None if t unreachable)."""
    r, c = D.row(s), D.col(t)
    if r[t] >= UNREACH:
        return None
    a = g.arcs
    path = [s]
    u = s
    while u != t:
        nxt = None
        for e in a.out_of(u).tolist():
            v = int(a.head[e])
            if c[v] < UNREACH and int(a.weight[e]) + c[v] == c[u]:
                if nxt is None or v < nxt:
                    nxt = v
        path.append(nxt)
        u = nxt
    return path


def report(g, s1, t1, s2, t2, seed=DEFAULT_SEED, trials=1):
    """Internally disjoint shortest paths (P1, P2), or None when none exist.

    P2 is grown one vertex at a time from s2; each accepted step deletes the
    consumed vertex and re-decides on the shrunken graph.
    """
    D0 = Distances(g)
    q = (int(s1), int(t1), int(s2), int(t2))
    if not decide(g, *q, seed=seed, trials=trials, D=D0):
        return None
    s1, t1, s2, t2 = q
    shared_12 = {s1, t1}
    d1 = D0.dist(s1, t1)
    cur_g = g
    P2 = [s2]
    removed = []
    step = 0
    while P2[-1] != t2:
        cur = P2[-1]
        step += 1
        drop = [] if cur in shared_12 else [cur]
        cands = []
        for e in cur_g.arcs.out_of(cur).tolist():
            w = int(cur_g.arcs.head[e])
            wt = int(cur_g.arcs.weight[e])
            if wt + D0.dist(w, t2) != D0.dist(cur, t2):
                continue
            if w in shared_12 and w not in (s2, t2):
                continue
            cands.append(w)
        advanced = False
        for w in sorted(cands):
            h = cur_g.without_vertices(drop) if drop else cur_g
            Dh = Distances(h)
            if Dh.dist(s1, t1) != d1 or Dh.dist(w, t2) != D0.dist(w, t2):
                continue
            if decide(h, s1, t1, w, t2, seed=trial_seed(seed, step), trials=trials, D=Dh):
                removed += drop
                cur_g = h
                P2.append(w)
                advanced = True
                break
        if not advanced:
            raise ReportingFailed(f"no extendable successor of {cur}; retry with another seed")
    allowed = {s1, t1} & {s2, t2}
    h = g.without_vertices([v for v in P2 if v not in allowed])
    Dh = Distances(h)
    if Dh.dist(s1, t1) != d1:
        raise ReportingFailed("no shortest s1 -> t1 path avoids the reported P2; retry with another seed")
    P1 = _tight_path(h, Dh, s1, t1)
    if witness_problems(g, D0, q, P1, P2, disjoint=True):
        raise ReportingFailed("reported paths failed validation; retry with another seed")
    return P1, P2
