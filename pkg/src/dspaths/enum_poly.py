"""Evaluation of shortest-path enumerating polynomials at a random point.

F(x, y) is the sum, over all shortest x -> y paths, of the product of the
edge values along the path.  It satisfies F(x, x) = 1 and
F(x, y) = sum of F(x, a) * z(a, y) over tight arcs (a, y), so one sweep of
the tight DAG out of x (in topological order) yields a whole row.
"""
import numpy as np

from ._accel import njit
from .gf2 import FieldRng, gf_mul
from .shortest_paths import UNREACH


class EdgeAssignment:
    """Random field value per edge variable; both orientations of an undirected edge share one."""

    def __init__(self, g, seed):
        self.seed = int(seed)
        self.values = FieldRng(seed).sample_many(g.num_vars)
        self.arc_values = self.values[g.arcs.var] if g.m else np.zeros(0, dtype=np.uint64)

    def of_arc(self, arc):
        return self.arc_values[arc]


@njit
def _f_row(n, order, dist, ptr, arcs, other, weight, zarc, src):
    # forward: ptr/arcs index in-arcs, other = tail; backward: out-arcs, other = head
    F = np.zeros(n, dtype=np.uint64)
    F[src] = np.uint64(1)
    for i in range(order.size):
        y = order[i]
        if y == src:
            continue
        dy = dist[y]
        acc = np.uint64(0)
        for k in range(ptr[y], ptr[y + 1]):
            e = arcs[k]
            a = other[e]
            da = dist[a]
            if da < UNREACH and da + weight[e] == dy:
                acc ^= gf_mul(F[a], zarc[e])
        F[y] = acc
    return F


class FTable:
    """Lazily evaluated rows F(x, .) and columns F(., y)."""

    def __init__(self, g, D, assignment):
        self.g = g
        self.D = D
        self.assignment = assignment
        self._rows = {}
        self._cols = {}

    def row(self, x):
        x = int(x)
        r = self._rows.get(x)
        if r is None:
            a = self.g.arcs
            r = _f_row(self.g.n, self.D.order_from(x), self.D.row(x), a.in_ptr, a.in_arcs,
                       a.tail, a.weight, self.assignment.arc_values, x)
            self._rows[x] = r
        return r

    def col(self, y):
        y = int(y)
        c = self._cols.get(y)
        if c is None:
            a = self.g.arcs
            c = _f_row(self.g.n, self.D.order_into(y), self.D.col(y), a.out_ptr, a.out_arcs,
                       a.head, a.weight, self.assignment.arc_values, y)
            self._cols[y] = c
        return c

    def __call__(self, x, y):
        if int(x) in self._rows or int(y) not in self._cols:
            return self.row(x)[y]
        return self._cols[int(y)][x]

    def matrix(self):
        if self.g.n == 0:
            return np.zeros((0, 0), dtype=np.uint64)
        return np.stack([self.row(x) for x in range(self.g.n)])


def eval_F(g, D, assignment, sources):
    """Rows F(x, .) for every x in ``sources``."""
    t = FTable(g, D, assignment)
    for x in sources:
        t.row(x)
    return t


def eval_F_rev(g, D, assignment, sinks):
    """Columns F(., y) for every y in ``sinks``."""
    t = FTable(g, D, assignment)
    for y in sinks:
        t.col(y)
    return t
