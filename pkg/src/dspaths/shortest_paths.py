"""Exact distances: Bellman-Ford potentials, Dijkstra, tightness predicates.

Distances are kept as lazily filled rows (from a source) and columns (into a
sink).  ``apsp`` simply fills every row.  Directed graphs are reweighted
with Johnson potentials so Dijkstra always sees nonnegative weights.
"""
import heapq

import numpy as np

from ._accel import njit
from .errors import KindMismatch, NegativeCycle, ZeroCycle

UNREACH = np.int64(1 << 62)


@njit
def _bellman_ford(n, tail, head, weight):
    # virtual source joined to every vertex by a zero arc
    pot = np.zeros(n, dtype=np.int64)
    pred = -np.ones(n, dtype=np.int64)
    last = -1
    for _ in range(n + 1):
        last = -1
        for e in range(tail.size):
            u = tail[e]
            v = head[e]
            cand = pot[u] + weight[e]
            if cand < pot[v]:
                pot[v] = cand
                pred[v] = e
                last = v
        if last < 0:
            break
    return pot, pred, last


@njit
def _dag_potentials(n, order, in_ptr, in_arcs, tail, weight):
    pot = np.zeros(n, dtype=np.int64)
    for i in range(order.size):
        v = order[i]
        for k in range(in_ptr[v], in_ptr[v + 1]):
            e = in_arcs[k]
            cand = pot[tail[e]] + weight[e]
            if cand < pot[v]:
                pot[v] = cand
    return pot


@njit
def _dijkstra(n, ptr, arcs, other, weight, pot_from, pot_to, src):
    # reduced weight of arc e is weight[e] + pot_from[e] - pot_to[e] >= 0
    dist = np.full(n, np.int64(1) << np.int64(62), dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    dist[src] = 0
    heap = [(np.int64(0), np.int64(src))]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in range(ptr[u], ptr[u + 1]):
            e = arcs[k]
            v = other[e]
            nd = d + weight[e] + pot_from[e] - pot_to[e]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@njit
def _kahn(n, tail, head, keep):
    indeg = np.zeros(n, dtype=np.int64)
    for e in range(tail.size):
        if keep[e]:
            indeg[head[e]] += 1
    ptr = np.zeros(n + 1, dtype=np.int64)
    for e in range(tail.size):
        if keep[e]:
            ptr[tail[e] + 1] += 1
    for v in range(n):
        ptr[v + 1] += ptr[v]
    fill = ptr[:-1].copy()
    adj = np.empty(ptr[n], dtype=np.int64)
    for e in range(tail.size):
        if keep[e]:
            adj[fill[tail[e]]] = head[e]
            fill[tail[e]] += 1
    order = np.empty(n, dtype=np.int64)
    qh = 0
    qt = 0
    for v in range(n):
        if indeg[v] == 0:
            order[qt] = v
            qt += 1
    while qh < qt:
        u = order[qh]
        qh += 1
        for k in range(ptr[u], ptr[u + 1]):
            v = adj[k]
            indeg[v] -= 1
            if indeg[v] == 0:
                order[qt] = v
                qt += 1
    return order[:qt], indeg


def topological_order(n, tail, head, keep=None):
    """Kahn order of the arcs selected by ``keep``; None if they contain a cycle."""
    if keep is None:
        keep = np.ones(tail.size, dtype=np.bool_)
    order, _ = _kahn(n, tail, head, keep)
    return order if order.size == n else None


def _find_cycle(n, tail, head, keep):
    """A cycle among arcs ``keep`` after Kahn left some vertices unprocessed."""
    order, indeg = _kahn(n, tail, head, keep)
    stuck = indeg > 0
    into = {}
    for e in np.flatnonzero(keep):
        if stuck[tail[e]] and stuck[head[e]]:
            into.setdefault(int(head[e]), int(tail[e]))
    v = int(np.flatnonzero(stuck)[0])
    seen = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = into[v]
    cyc = walk[seen[v]:]
    cyc.reverse()
    return cyc + [cyc[0]]


def johnson_potentials(g):
    """Potentials p with w(u,v) + p(u) - p(v) >= 0 for every arc.

    Raises NegativeCycle (with a witness cycle) when none exist.
    """
    a = g.arcs
    if not g.directed or a.m == 0 or a.weight.min() >= 0:
        return np.zeros(g.n, dtype=np.int64)
    order = topological_order(g.n, a.tail, a.head)
    if order is not None:
        # acyclic: one relaxation pass in topological order is exact
        return _dag_potentials(g.n, order, a.in_ptr, a.in_arcs, a.tail, a.weight)
    pot, pred, last = _bellman_ford(g.n, a.tail, a.head, a.weight)
    if last < 0:
        return pot
    v = int(last)
    for _ in range(g.n):
        v = int(a.tail[pred[v]])
    cycle = [v]
    u = int(a.tail[pred[v]])
    while u != v:
        cycle.append(u)
        u = int(a.tail[pred[u]])
    cycle.append(v)
    cycle.reverse()
    raise NegativeCycle("graph contains a negative-weight cycle: " + " -> ".join(map(str, cycle)), cycle)


def zero_arc_order(g, pot):
    """Topological rank of every vertex in the subgraph of arcs with reduced weight 0.

    Raises ZeroCycle when that subgraph has a cycle.
    """
    a = g.arcs
    keep = (a.weight + pot[a.tail] - pot[a.head]) == 0
    if not g.directed:
        # an undirected zero edge would already be rejected by the parser
        keep &= False
    order, _ = _kahn(g.n, a.tail, a.head, keep)
    if order.size < g.n:
        raise ZeroCycle(_find_cycle(g.n, a.tail, a.head, keep))
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n, dtype=np.int64)
    return rank


def assert_no_zero_cycle(g, potentials):
    zero_arc_order(g, potentials)


class Distances:
    """Exact shortest distances of a graph, filled on demand.

    ``row(x)[v]`` is dist(x, v) and ``col(y)[v]`` is dist(v, y); unreachable
    entries hold ``UNREACH``.  Construction validates the graph: negative
    cycles and zero cycles are rejected.
    """

    def __init__(self, g):
        self.g = g
        self.n = g.n
        self.pot = johnson_potentials(g)
        # ties in reduced distance are broken along zero-reduced-weight arcs
        self.rank0 = zero_arc_order(g, self.pot)
        a = g.arcs
        self._pot_tail = self.pot[a.tail]
        self._pot_head = self.pot[a.head]
        self._rows = {}
        self._cols = {}

    def row(self, x):
        x = int(x)
        r = self._rows.get(x)
        if r is None:
            a = self.g.arcs
            d = _dijkstra(self.n, a.out_ptr, a.out_arcs, a.head, a.weight,
                          self._pot_tail, self._pot_head, x)
            r = np.where(d >= UNREACH, UNREACH, d - self.pot[x] + self.pot)
            self._rows[x] = r
        return r

    def col(self, y):
        y = int(y)
        c = self._cols.get(y)
        if c is None:
            if not self.g.directed:
                c = self.row(y)
            else:
                a = self.g.arcs
                d = _dijkstra(self.n, a.in_ptr, a.in_arcs, a.tail, a.weight,
                              self._pot_tail, self._pot_head, y)
                c = np.where(d >= UNREACH, UNREACH, d - self.pot + self.pot[y])
            self._cols[y] = c
        return c

    def has_row(self, x):
        return int(x) in self._rows

    def dist(self, x, y):
        if int(y) in self._cols and int(x) not in self._rows:
            return int(self._cols[int(y)][x])
        return int(self.row(x)[y])

    def reachable(self, x, y):
        return self.dist(x, y) < UNREACH

    def fill(self):
        for x in range(self.n):
            self.row(x)
        return self

    @property
    def matrix(self):
        """Dense n x n array (fills every row)."""
        self.fill()
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return np.stack([self._rows[x] for x in range(self.n)])

    def order_from(self, x):
        """Vertices reachable from x in a topological order of the tight DAG out of x."""
        r = self.row(x)
        reach = np.flatnonzero(r < UNREACH)
        red = r[reach] - self.pot[reach]
        return reach[np.lexsort((self.rank0[reach], red))]

    def order_into(self, y):
        """Vertices reaching y, sinks first: y, then anything whose tight arcs lead to earlier ones."""
        c = self.col(y)
        reach = np.flatnonzero(c < UNREACH)
        red = c[reach] + self.pot[reach]
        return reach[np.lexsort((-self.rank0[reach], red))]


def apsp(g):
    """All-pairs distances (Johnson on directed graphs, Dijkstra per source otherwise)."""
    return Distances(g).fill()


def vertex_on_sp(D, x, v, y):
    dxy = D.dist(x, y)
    if dxy >= UNREACH:
        return False
    dxv = D.dist(x, v)
    dvy = D.dist(v, y)
    return dxv < UNREACH and dvy < UNREACH and dxv + dvy == dxy


def edge_on_sp(D, g, x, arc, y):
    """Is arc id ``arc`` (of ``g.arcs``) on some shortest x -> y path?"""
    a = g.arcs
    u, v, w = int(a.tail[arc]), int(a.head[arc]), int(a.weight[arc])
    dxy = D.dist(x, y)
    if dxy >= UNREACH:
        return False
    dxu = D.dist(x, u)
    dvy = D.dist(v, y)
    return dxu < UNREACH and dvy < UNREACH and dxu + w + dvy == dxy


class TightDag:
    """Tight arcs out of a source (``into=False``) or into a sink (``into=True``).

    ``order`` lists the covered vertices so that every tight arc goes from an
    earlier to a later vertex (for ``into=True``, later to earlier: the sink
    comes first).
    """

    def __init__(self, g, D, root, into=False):
        self.root = int(root)
        self.into = into
        a = g.arcs
        if into:
            c = D.col(root)
            ok = (c[a.tail] < UNREACH) & (c[a.head] < UNREACH)
            mask = ok & (a.weight + c[a.head] == c[a.tail])
            self.order = D.order_into(root)
        else:
            r = D.row(root)
            ok = (r[a.tail] < UNREACH) & (r[a.head] < UNREACH)
            mask = ok & (r[a.tail] + a.weight == r[a.head])
            self.order = D.order_from(root)
        self.arc_ids = np.flatnonzero(mask)
        self.tail = a.tail[self.arc_ids]
        self.head = a.head[self.arc_ids]
        self.n = g.n

    def edges(self):
        return list(zip(self.tail.tolist(), self.head.tolist()))

    def successors(self):
        out = [[] for _ in range(self.n)]
        for u, v in zip(self.tail.tolist(), self.head.tolist()):
            out[u].append(v)
        return out

    def predecessors(self):
        inn = [[] for _ in range(self.n)]
        for u, v in zip(self.tail.tolist(), self.head.tolist()):
            inn[v].append(u)
        return inn


def tight_dag(g, D, x, direction="out-of"):
    if direction not in ("out-of", "into"):
        raise KindMismatch(f"unknown direction {direction!r}")
    return TightDag(g, D, x, into=(direction == "into"))


@njit
def _tarjan_scc(n, ptr, arcs, head):
    index = -np.ones(n, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    comp = -np.ones(n, dtype=np.int64)
    onstack = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    sp = 0
    call_v = np.empty(n, dtype=np.int64)
    call_k = np.empty(n, dtype=np.int64)
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        depth = 0
        call_v[0] = root
        call_k[0] = ptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        onstack[root] = True
        while depth >= 0:
            v = call_v[depth]
            k = call_k[depth]
            if k < ptr[v + 1]:
                call_k[depth] = k + 1
                w = head[arcs[k]]
                if index[w] < 0:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = True
                    depth += 1
                    call_v[depth] = w
                    call_k[depth] = ptr[w]
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                depth -= 1
                if depth >= 0:
                    u = call_v[depth]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return comp


def strong_components(g):
    """Component label per vertex (labels in reverse topological order)."""
    a = g.arcs
    return _tarjan_scc(g.n, a.out_ptr, a.out_arcs, a.head)
