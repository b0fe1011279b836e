"""Dominator trees of DAGs, cut-vertex chains and distance-critical counts.

On a DAG the immediate dominator of v is the nearest common ancestor, in the
partially built tree, of v's predecessors, provided vertices are processed
in topological order.  Ancestor queries use binary lifting.
"""
import numpy as np

from ._accel import njit
from .errors import RootMissing, Unreachable
from .shortest_paths import TightDag, topological_order

# depth of vertices the root cannot reach
INF_DEPTH = np.int64(1 << 62)


@njit
def _dag_idom(n, order, pptr, padj, root):
    levels = 1
    while (1 << levels) < n + 1:
        levels += 1
    up = np.empty((levels, n), dtype=np.int64)
    depth = np.full(n, np.int64(1) << np.int64(62), dtype=np.int64)
    idom = -np.ones(n, dtype=np.int64)
    depth[root] = 1
    for j in range(levels):
        up[j, root] = root
    for i in range(order.size):
        v = order[i]
        if v == root:
            continue
        cur = -1
        for k in range(pptr[v], pptr[v + 1]):
            u = padj[k]
            if depth[u] >= (np.int64(1) << np.int64(62)):
                continue
            if cur < 0:
                cur = u
                continue
            # nearest common ancestor of cur and u
            a = cur
            b = u
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
        if cur < 0:
            continue
        idom[v] = cur
        depth[v] = depth[cur] + 1
        up[0, v] = cur
        for j in range(1, levels):
            up[j, v] = up[j - 1, up[j - 1, v]]
    return idom, depth


def _pred_csr(n, tails, heads):
    order = np.argsort(heads, kind="stable")
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(heads, minlength=n), out=ptr[1:])
    return ptr, np.ascontiguousarray(tails[order], dtype=np.int64)


class DominatorTree:
    def __init__(self, root, idom, depth):
        self.root = int(root)
        self.idom = idom
        self.depth = depth

    def reachable(self, v):
        return self.depth[v] < INF_DEPTH

    def chain(self, v):
        """Dominators of v from the root down to v itself."""
        if not self.reachable(v):
            raise Unreachable(f"vertex {v} is not reachable from root {self.root}")
        out = [int(v)]
        while out[-1] != self.root:
            out.append(int(self.idom[out[-1]]))
        out.reverse()
        return out


def build_arcs(n, tails, heads, root, order=None):
    """Dominator tree of the DAG with the given arcs, rooted at ``root``."""
    if not 0 <= root < n:
        raise RootMissing(f"root {root} is not a vertex")
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    if order is None:
        order = topological_order(n, tails, heads)
        if order is None:
            raise ValueError("dominator construction expects an acyclic graph")
    pptr, padj = _pred_csr(n, tails, heads)
    idom, depth = _dag_idom(n, np.asarray(order, dtype=np.int64), pptr, padj, int(root))
    return DominatorTree(root, idom, depth)


def build(dag, root=None):
    """Dominator tree of a TightDag from its root.

    An ``into`` DAG is handled on its reversal, so its tree gives the
    post-dominators with respect to the sink.
    """
    if root is None:
        root = dag.root
    if not isinstance(dag, TightDag):
        n, tails, heads = dag
        return build_arcs(n, tails, heads, root)
    if dag.into:
        return build_arcs(dag.n, dag.head, dag.tail, root, dag.order)
    if root != dag.root:
        return build_arcs(dag.n, dag.tail, dag.head, root)
    return build_arcs(dag.n, dag.tail, dag.head, root, dag.order)


def cut_vertices(dag, s, t):
    """Vertices lying on every s -> t path, in path order."""
    return build(dag, s).chain(t)


def delta_from(g, D, v):
    """delta(v, w) for every w: number of distance-critical vertices, endpoints included."""
    return build(TightDag(g, D, v)).depth


def delta_into(g, D, w):
    """delta(v, w) for every v (post-dominator depths from the sink)."""
    return build(TightDag(g, D, w, into=True)).depth


def delta_table(g, D):
    """Dense n x n table of delta values (INF_DEPTH where unreachable)."""
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return np.stack([delta_from(g, D, v) for v in range(g.n)])
