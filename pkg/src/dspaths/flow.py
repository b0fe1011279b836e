"""Internally vertex-disjoint paths by unit-capacity augmentation.

Each vertex v is split into v_in -> v_out with capacity 1 (unbounded for the
source, the sink and any vertex listed in ``free``); every arc u -> v becomes
u_out -> v_in with capacity 1.  Augmenting paths are found by BFS.
"""
from collections import deque


class _Residual:
    def __init__(self):
        self.to = []
        self.cap = []
        self.adj = {}

    def add(self, u, v, c):
        self.adj.setdefault(u, []).append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj.setdefault(v, []).append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def augment(self, s, t):
        parent = {s: -1}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for e in self.adj.get(u, ()):
                v = self.to[e]
                if self.cap[e] > 0 and v not in parent:
                    parent[v] = e
                    queue.append(v)
        if t not in parent:
            return False
        v = t
        while v != s:
            e = parent[v]
            self.cap[e] -= 1
            self.cap[e ^ 1] += 1
            v = self.to[e ^ 1]
        return True


def disjoint_paths(arcs, source, sink, k, free=()):
    """Up to ``k`` internally vertex-disjoint source -> sink paths over ``arcs``.

    Returns a list of vertex lists; fewer than ``k`` entries means the
    maximum is smaller.  Paths are sorted for determinism.
    """
    free = set(free) | {source, sink}
    net = _Residual()
    verts = {source, sink}
    arc_edge = {}
    for u, v in sorted(set(arcs)):
        if u == v:
            continue
        verts.add(u)
        verts.add(v)
        arc_edge[(u, v)] = len(net.to)
        net.add(("o", u), ("i", v), 1)
    for v in sorted(verts, key=repr):
        net.add(("i", v), ("o", v), k if v in free else 1)
    got = 0
    while got < k and net.augment(("o", source), ("i", sink)):
        got += 1
    # arcs carrying flow: forward capacity consumed
    used = {}
    for (u, v), e in arc_edge.items():
        if net.cap[e] == 0:
            used.setdefault(u, []).append(v)
    for lst in used.values():
        lst.sort(reverse=True)
    paths = []
    for _ in range(got):
        path = [source]
        u = source
        while u != sink:
            v = used[u].pop()
            path.append(v)
            u = v
        paths.append(path)
    paths.sort()
    return paths
