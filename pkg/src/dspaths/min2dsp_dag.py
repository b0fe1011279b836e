"""Min-2-DSP on DAGs through shared-edge components and dominator trees.

Every intersection of an optimal pair lies in one connected component B of
the arcs shared by both shortest-path DAGs.  Inside a gadget H_B (B's shared
arcs, plus dummy entry/exit terminals per pair) the least overlap of two
paths through v is the number of cut vertices from the super-source to v
and from v to the super-sink, v counted once.
"""
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._accel import njit
from .checks import witness_problems
from .dominators import INF_DEPTH, _pred_csr, build_arcs
from .dsp2 import DEFAULT_SEED, decide
from .errors import (
    InternalFlowInfeasible,
    KindMismatch,
    NoIntersectingPair,
    NotADag,
    TerminalsNotDistinct,
    UnreachableTerminal,
)
from .flow import disjoint_paths
from .shortest_paths import UNREACH, Distances, topological_order

INF = float("inf")
NO_PAIR = np.int64(1 << 62)


@njit
def _least_double_kernel(n, nb, order, pos, sptr, sadj, pptr, padj, starts, bounds, pre, suf, out):
    """Scan starts u (sorted by lower bound) for children v of u in u's dominator tree.

    From each u the DAG is walked in topological order and the walk stops at
    the first vertex x that is the whole frontier: x dominates everything
    after it, so nothing beyond x has u as immediate dominator.
    """
    levels = 1
    while (1 << levels) < n + 1:
        levels += 1
    up = np.empty((levels, n), dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    stamp = -np.ones(n, dtype=np.int64)
    heap = np.empty(n, dtype=np.int64)
    best_c = NO_PAIR
    best_u = -1
    best_v = -1
    for r in range(starts.size):
        if bounds[r] >= best_c:
            break
        u = starts[r]
        pu = pre[u]
        stamp[u] = r
        depth[u] = 1
        for j in range(levels):
            up[j, u] = u
        heap[0] = pos[u]
        size = 1
        while size:
            # pop the earliest frontier vertex
            x = order[heap[0]]
            size -= 1
            last = heap[size]
            i = 0
            while True:
                c = 2 * i + 1
                if c >= size:
                    break
                if c + 1 < size and heap[c + 1] < heap[c]:
                    c += 1
                if heap[c] >= last:
                    break
                heap[i] = heap[c]
                i = c
            heap[i] = last
            if x != u:
                cur = -1
                for k in range(pptr[x], pptr[x + 1]):
                    a = padj[k]
                    if stamp[a] != r:
                        continue
                    if cur < 0:
                        cur = a
                        continue
                    b = cur
                    if depth[a] < depth[b]:
                        a, b = b, a
                    diff = depth[a] - depth[b]
                    j = 0
                    while diff:
                        if diff & 1:
                            a = up[j, a]
                        diff >>= 1
                        j += 1
                    if a != b:
                        for j in range(levels - 1, -1, -1):
                            if up[j, a] != up[j, b]:
                                a = up[j, a]
                                b = up[j, b]
                        a = up[0, a]
                    cur = a
                depth[x] = depth[cur] + 1
                up[0, x] = cur
                for j in range(1, levels):
                    up[j, x] = up[j - 1, up[j - 1, x]]
                if cur == u and x < nb and out[x]:
                    c = pu + suf[x]
                    if c < best_c or (c == best_c and u == best_u and x < best_v):
                        best_c = c
                        best_u = u
                        best_v = x
                if size == 0:
                    break
            for k in range(sptr[x], sptr[x + 1]):
                y = sadj[k]
                if stamp[y] != r:
                    stamp[y] = r
                    # push pos[y]
                    i = size
                    size += 1
                    while i > 0 and heap[(i - 1) // 2] > pos[y]:
                        heap[i] = heap[(i - 1) // 2]
                        i = (i - 1) // 2
                    heap[i] = pos[y]
    return best_c, best_u, best_v


class PairDistances:
    """Distance rows/columns of both terminal pairs and the tightness masks they induce."""

    def __init__(self, g, D, q):
        s1, t1, s2, t2 = q
        a = g.arcs
        self.r = (D.row(s1), D.row(s2))
        self.c = (D.col(t1), D.col(t2))
        self.d = (int(self.r[0][t1]), int(self.r[1][t2]))
        self.on = []
        self.arc_on = []
        for i in range(2):
            r, c, d = self.r[i], self.c[i], self.d[i]
            ok = (r < UNREACH) & (c < UNREACH)
            self.on.append(ok & (r + c == d))
            aok = (r[a.tail] < UNREACH) & (c[a.head] < UNREACH)
            self.arc_on.append(aok & (r[a.tail] + a.weight + c[a.head] == d))
        self.both = self.on[0] & self.on[1]


def components(n, tails, heads):
    if len(tails) == 0:
        return np.arange(n, dtype=np.int64)
    adj = coo_matrix((np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(n, n))
    _, labels = connected_components(adj, directed=True, connection="weak")
    return labels.astype(np.int64)


class Gadget:
    """The auxiliary DAG of one shared-edge component B.

    Local ids 0..|B|-1 are B's vertices; then s_B, s_B1, s_B2, t_B, t_B1,
    t_B2.  ``entry[i][y]`` is the outside tail of a pair-i tight arc into y
    (None when y is s_i itself), ``exit[i][x]`` the outside head of one
    leaving x (None when x is t_i).
    """

    def __init__(self, B, inner, entry, exit):
        self.B = list(B)
        self.local = {v: i for i, v in enumerate(self.B)}
        nb = len(self.B)
        self.sB, self.s1, self.s2, self.tB, self.t1, self.t2 = range(nb, nb + 6)
        self.entry = entry
        self.exit = exit
        loc = self.local
        arcs = [(loc[x], loc[y]) for x, y in inner]
        for i, src in enumerate((self.s1, self.s2)):
            arcs += [(src, loc[y]) for y in sorted(entry[i])]
            arcs.append((self.sB, src))
        for i, dst in enumerate((self.t1, self.t2)):
            arcs += [(loc[x], dst) for x in sorted(exit[i])]
            arcs.append((dst, self.tB))
        self.arcs = arcs
        self.n = nb + 6
        self.tails = np.array([u for u, _ in arcs], dtype=np.int64)
        self.heads = np.array([v for _, v in arcs], dtype=np.int64)
        self.order = topological_order(self.n, self.tails, self.heads)
        if self.order is None:
            raise NotADag("gadget graph has a cycle")
        self.rorder = self.order[::-1].copy()
        self.fwd = build_arcs(self.n, self.tails, self.heads, self.sB, self.order)
        self.bwd = build_arcs(self.n, self.heads, self.tails, self.tB, self.rorder)

    def _reach_fwd(self, root):
        return build_arcs(self.n, self.tails, self.heads, root, self.order).depth < INF_DEPTH

    def _reach_bwd(self, root):
        return build_arcs(self.n, self.heads, self.tails, root, self.rorder).depth < INF_DEPTH

    def through(self):
        """Masks: entered by both pairs' sources, leaving to both pairs' sinks."""
        into = self._reach_fwd(self.s1) & self._reach_fwd(self.s2)
        out = self._reach_bwd(self.t1) & self._reach_bwd(self.t2)
        return into, out

    def pre(self, u):
        # cut vertices on the way s_B -> u, u included
        return int(self.fwd.depth[u]) - 1

    def suf(self, v):
        return int(self.bwd.depth[v]) - 1

    def alpha(self):
        """{v: least overlap of a gadget pair through v} (inf where none passes)."""
        into, out = self.through()
        res = {}
        for v, i in self.local.items():
            res[v] = self.pre(i) + self.suf(i) - 1 if into[i] and out[i] else INF
        return res

    def least_double(self):
        """(count, u, v): least overlap among gadget pairs sharing two or more vertices.

        Such a pair has consecutive shared vertices u before v with no cut
        vertex between them, and then overlaps in pre(u) + suf(v) vertices.
        Returns (inf, None, None) when no pair shares two vertices.
        """
        into, out = self.through()
        nb = len(self.B)
        # lower bound per start: pre(u) plus the least suf below u
        below = np.full(self.n, INF)
        succ = {}
        for x, y in self.arcs:
            if x < nb and y < nb:
                succ.setdefault(x, []).append(y)
        for x in self.rorder.tolist():
            for y in succ.get(x, ()):
                below[x] = min(below[x], below[y], self.suf(y) if out[y] else INF)
        starts = sorted((self.pre(u) + below[u], u) for u in range(nb) if into[u] and below[u] < INF)
        if not starts:
            return INF, None, None
        pos = np.empty(self.n, dtype=np.int64)
        pos[self.order] = np.arange(self.n)
        sptr, sadj = _pred_csr(self.n, self.heads, self.tails)
        pptr, padj = _pred_csr(self.n, self.tails, self.heads)
        pre = self.fwd.depth - 1
        suf = self.bwd.depth - 1
        c, u, v = _least_double_kernel(
            self.n, nb, self.order, pos, sptr, sadj, pptr, padj,
            np.array([u for _, u in starts], dtype=np.int64),
            np.array([int(lb) for lb, _ in starts], dtype=np.int64),
            pre, suf, out)
        if u < 0:
            return INF, None, None
        return int(c), int(u), int(v)

    def double_pair(self, u, v):
        """Gadget paths s_B1 -> t_B1 and s_B2 -> t_B2 through u then v, overlapping least."""
        pre = _segment_paths(self.n, self.tails, self.heads, self.sB, u)
        suf = _segment_paths(self.n, self.heads, self.tails, self.tB, v)
        suf = [lane[::-1] for lane in suf]
        if (u, v) in set(self.arcs):
            mid = [[u, v], [u, v]]
        else:
            mid = disjoint_paths(self.arcs, u, v, 2)
            if len(mid) < 2:
                raise InternalFlowInfeasible(f"no two disjoint paths between {u} and {v}")
        p1 = next(p for p in pre if p[1] == self.s1)
        p2 = next(p for p in pre if p[1] == self.s2)
        q1 = next(p for p in suf if p[-2] == self.t1)
        q2 = next(p for p in suf if p[-2] == self.t2)
        return p1[2:] + mid[0][1:] + q1[1:-2], p2[2:] + mid[1][1:] + q2[1:-2]


def gadget_alpha(B, inner, entries, exits):
    """alpha(v) for every v in B (inf where some pair cannot pass through v)."""
    entry = tuple({y: None for y in e} for e in entries)
    exit = tuple({x: None for x in e} for e in exits)
    return Gadget(B, inner, entry, exit).alpha()


def shared_components(g, D, q, P=None):
    """(P, labels, E_cap arc ids): components of the shared tight arcs."""
    if P is None:
        P = PairDistances(g, D, q)
    a = g.arcs
    shared = np.flatnonzero(P.arc_on[0] & P.arc_on[1])
    labels = components(g.n, a.tail[shared], a.head[shared])
    return P, labels, shared


def gadgets(g, D, q, P=None, singletons=True):
    """One Gadget per shared-edge component holding a vertex on both pairs' paths.

    Single-vertex components come back as (v, entered_by_both_and_left_by_both)
    tuples instead: their gadget is trivial.
    """
    P, labels, shared = shared_components(g, D, q, P)
    a = g.arcs
    s = (q[0], q[2])
    t = (q[1], q[3])
    I = np.flatnonzero(P.both)
    wanted = {int(labels[v]) for v in I.tolist()}
    if not wanted:
        return []
    members = {}
    for v in np.flatnonzero(np.isin(labels, list(wanted))).tolist():
        members.setdefault(int(labels[v]), []).append(v)
    inner_by = {}
    for e in shared.tolist():
        inner_by.setdefault(int(labels[a.tail[e]]), []).append((int(a.tail[e]), int(a.head[e])))
    out = []
    for lab in sorted(members):
        B = members[lab]
        if len(B) == 1:
            if singletons:
                v = B[0]
                ok = all(
                    (v == s[i] or bool(np.any(P.arc_on[i][a.into(v)])))
                    and (v == t[i] or bool(np.any(P.arc_on[i][a.out_of(v)])))
                    for i in range(2)
                )
                out.append((v, ok))
            continue
        Bset = set(B)
        entry = ({}, {})
        exit = ({}, {})
        for i in range(2):
            mask = P.arc_on[i]
            for y in B:
                for e in a.into(y).tolist():
                    x = int(a.tail[e])
                    if mask[e] and x not in Bset:
                        entry[i].setdefault(y, x)
                for e in a.out_of(y).tolist():
                    z = int(a.head[e])
                    if mask[e] and z not in Bset:
                        exit[i].setdefault(y, z)
            if s[i] in Bset:
                entry[i][s[i]] = None
            if t[i] in Bset:
                exit[i][t[i]] = None
        out.append(Gadget(B, inner_by.get(lab, []), entry, exit))
    return out


def dag_alphas(g, D, q, P=None):
    """alpha(v) for every vertex lying on shortest paths of both pairs."""
    alpha = {}
    for gad in gadgets(g, D, q, P):
        if isinstance(gad, tuple):
            alpha[gad[0]] = 1 if gad[1] else INF
        else:
            alpha.update(gad.alpha())
    return alpha


def _segment_paths(n, tails, heads, root, sink):
    """Two root -> sink paths in a DAG meeting only at the cut vertices.

    Returns the two lanes as vertex lists, or raises InternalFlowInfeasible.
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    order = topological_order(n, tails, heads)
    dom = build_arcs(n, tails, heads, root, order)
    chain = dom.chain(sink)
    on_chain = {v: j for j, v in enumerate(chain)}
    seg = np.full(n, -1, dtype=np.int64)
    for v in order.tolist():
        if dom.depth[v] >= INF_DEPTH:
            continue
        seg[v] = on_chain[v] if v in on_chain else seg[dom.idom[v]]
    per = {}
    for u, v in zip(tails.tolist(), heads.tolist()):
        j = seg[u]
        if j < 0 or u == sink:
            continue
        if seg[v] == j or (v in on_chain and on_chain[v] == j + 1):
            per.setdefault(int(j), []).append((u, v))
    lanes = ([chain[0]], [chain[0]])
    for j in range(len(chain) - 1):
        a, b = chain[j], chain[j + 1]
        arcs = per.get(j, [])
        if (a, b) in set(arcs) and len(arcs) == 1:
            pair = [[a, b], [a, b]]
        else:
            pair = disjoint_paths(arcs, a, b, 2)
            if len(pair) == 1 and pair[0] == [a, b]:
                pair = [[a, b], [a, b]]
            if len(pair) < 2:
                raise InternalFlowInfeasible(f"no two disjoint paths between cut vertices {a} and {b}")
        lanes[0].extend(pair[0][1:])
        lanes[1].extend(pair[1][1:])
    return lanes


def _legs(g, D, v, ends, into):
    """Paths from v to ends[0] and ends[1] (or into v from them), overlapping minimally."""
    a = g.arcs
    n = g.n
    if into:
        base = D.col(v)
        cols = [D.row(x) for x in ends]
        # arc (x, y) on a shortest end_i -> v path: d(e_i, x) + w + d(y, v) == d(e_i, v)
        keep = np.zeros(a.m, dtype=bool)
        for i, r in enumerate(cols):
            ok = (r[a.tail] < UNREACH) & (base[a.head] < UNREACH)
            keep |= ok & (r[a.tail] + a.weight + base[a.head] == r[v])
        # walk backwards: reversed arcs, root v
        tails, heads = a.head[keep], a.tail[keep]
    else:
        base = D.row(v)
        cols = [D.col(x) for x in ends]
        keep = np.zeros(a.m, dtype=bool)
        for i, c in enumerate(cols):
            ok = (base[a.tail] < UNREACH) & (c[a.head] < UNREACH)
            keep |= ok & (base[a.tail] + a.weight + c[a.head] == c[v])
        tails, heads = a.tail[keep], a.head[keep]
    star = n
    tails = np.concatenate([tails, np.array(ends, dtype=np.int64)])
    heads = np.concatenate([heads, np.array([star, star], dtype=np.int64)])
    lanes = _segment_paths(n + 1, tails, heads, v, star)
    out = [None, None]
    for lane in lanes:
        last = lane[-2]
        body = lane[:-1]
        if last == ends[0] and out[0] is None:
            out[0] = body
        else:
            out[1] = body
    if out[0] is None or out[1] is None or out[1][-1] != ends[1]:
        raise InternalFlowInfeasible(f"legs from {v} do not reach both ends")
    if into:
        out = [list(reversed(p)) for p in out]
    return out


def report_via_subproblem(g, D, q, v):
    """Shortest paths P1, P2 through v overlapping as little as possible."""
    s1, t1, s2, t2 = q
    pre1, pre2 = _legs(g, D, v, (s1, s2), into=True)
    suf1, suf2 = _legs(g, D, v, (t1, t2), into=False)
    return pre1 + suf1[1:], pre2 + suf2[1:]


def check_dag_query(g, q):
    if not g.directed:
        raise KindMismatch("expected a directed acyclic graph")
    a = g.arcs
    if topological_order(g.n, a.tail, a.head) is None:
        raise NotADag("graph has a directed cycle")
    if len(set(q)) != 4:
        raise TerminalsNotDistinct("Min-2-DSP needs four distinct terminals")
    for x in q:
        if not 0 <= x < g.n:
            raise UnreachableTerminal(f"terminal {x} is not a vertex")


def solve_dag(g, s1, t1, s2, t2, seed=DEFAULT_SEED, trials=1, report=True):
    """(k*, (P1, P2) or None).  Witness paths are attached whenever k* >= 1."""
    q = (int(s1), int(t1), int(s2), int(t2))
    check_dag_query(g, q)
    D = Distances(g)
    if D.dist(q[0], q[1]) >= UNREACH or D.dist(q[2], q[3]) >= UNREACH:
        raise UnreachableTerminal("a target is not reachable from its source")
    if decide(g, *q, seed=seed, trials=trials, D=D):
        return 0, None
    alpha = dag_alphas(g, D, q)
    finite = [(k, v) for v, k in alpha.items() if k != INF]
    if not finite:
        raise NoIntersectingPair("no vertex lies on intersecting shortest paths of both pairs")
    k, v = min(finite)
    if not report:
        return k, None
    P1, P2 = report_via_subproblem(g, D, q, v)
    problems = witness_problems(g, D, q, P1, P2, k=k)
    if problems:
        raise InternalFlowInfeasible("; ".join(problems))
    return k, (P1, P2)
