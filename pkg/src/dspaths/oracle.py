"""Brute-force ground truth for small instances.

Everything here enumerates shortest paths explicitly, so it is exponential
in the worst case and guarded by a path cap.
"""
from collections import Counter
from dataclasses import dataclass, field

from . import gf2
from .errors import CapExceeded, PrecedenceViolated
from .shortest_paths import UNREACH, Distances

DEFAULT_CAP = 10_000


def enum_paths(g, D, x, y, cap=DEFAULT_CAP):
    """All shortest x -> y paths as vertex tuples, lexicographically sorted."""
    if D is None:
        D = Distances(g)
    x, y = int(x), int(y)
    dx = D.row(x)
    dy = D.col(y)
    total = dx[y]
    if total >= UNREACH:
        return []
    a = g.arcs
    succ = {}
    for e in range(a.m):
        u, v, w = int(a.tail[e]), int(a.head[e]), int(a.weight[e])
        if dx[u] < UNREACH and dy[v] < UNREACH and dx[u] + w == dx[v] and dx[v] + dy[v] == total:
            succ.setdefault(u, []).append(v)
    for lst in succ.values():
        lst.sort()
    out = []
    stack = [(x, (x,))]
    while stack:
        u, path = stack.pop()
        if u == y:
            out.append(path)
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} shortest paths from {x} to {y}; shrink the instance")
            continue
        for v in reversed(succ.get(u, ())):
            stack.append((v, path + (v,)))
    out.sort()
    return out


def internally_disjoint(P1, P2):
    allowed = {P1[0], P1[-1]} & {P2[0], P2[-1]}
    return not ((set(P1) & set(P2)) - allowed)


def classify(P1, P2):
    """'disjoint', 'singular', 'agreeing', 'disagreeing' or 'mixed'."""
    common = set(P1) & set(P2)
    if not common:
        return "disjoint"
    if len(common) == 1:
        return "singular"
    o1 = [v for v in P1 if v in common]
    o2 = [v for v in P2 if v in common]
    if o1 == o2:
        return "agreeing"
    if o1 == o2[::-1]:
        return "disagreeing"
    return "mixed"


def _mask(path):
    m = 0
    for v in path:
        m |= 1 << v
    return m


@dataclass
class MinIntersection:
    k: int
    witness: tuple
    disjoint_exists: bool
    classes: set = field(default_factory=set)
    best_by_class: dict = field(default_factory=dict)

    @property
    def internallyDisjointExists(self):
        return self.disjoint_exists


def min_intersection(g, q, cap=DEFAULT_CAP, D=None):
    """Exact minimum |V(P1) & V(P2)| over all shortest-path pairs.

    Also reports whether an internally disjoint pair exists, the classes of
    the optimal pairs, and the minimum restricted to each class.
    Returns None when a terminal pair is unreachable.
    """
    s1, t1, s2, t2 = q
    if D is None:
        D = Distances(g)
    L1 = enum_paths(g, D, s1, t1, cap)
    L2 = enum_paths(g, D, s2, t2, cap)
    if not L1 or not L2:
        return None
    allowed = _mask({s1, t1} & {s2, t2})
    M1 = [_mask(p) for p in L1]
    M2 = [_mask(p) for p in L2]
    best = None
    witness = None
    disjoint = False
    for i, m1 in enumerate(M1):
        for j, m2 in enumerate(M2):
            both = m1 & m2
            c = bin(both).count("1")
            if not disjoint and not (both & ~allowed):
                disjoint = True
            if best is None or c < best:
                best, witness = c, (L1[i], L2[j])
    classes = set()
    best_by_class = {}
    for i, m1 in enumerate(M1):
        for j, m2 in enumerate(M2):
            c = bin(m1 & m2).count("1")
            cls = classify(L1[i], L2[j])
            if c < best_by_class.get(cls, UNREACH):
                best_by_class[cls] = c
            if c == best:
                classes.add(cls)
    return MinIntersection(best, witness, disjoint, classes, best_by_class)


def swap(P1, P2, a, b):
    """Exchange the a -> b segments of two paths."""
    P1, P2 = tuple(P1), tuple(P2)
    try:
        i1, j1 = P1.index(a), P1.index(b)
        i2, j2 = P2.index(a), P2.index(b)
    except ValueError:
        raise PrecedenceViolated(f"{a} and {b} must lie on both paths") from None
    if i1 > j1 or i2 > j2:
        raise PrecedenceViolated(f"{a} must precede {b} on both paths")
    Q1 = P1[:i1] + P2[i2:j2] + P1[j1:]
    Q2 = P2[:i2] + P1[i1:j1] + P2[j2:]
    return Q1, Q2


def twin_crossing_pairs(P1, P2):
    """Distinct (a, b) preceding on both paths with differing a -> b segments."""
    pos1 = {v: i for i, v in enumerate(P1)}
    pos2 = {v: i for i, v in enumerate(P2)}
    common = [v for v in P1 if v in pos2]
    out = []
    for a in common:
        for b in common:
            if a != b and pos1[a] < pos1[b] and pos2[a] < pos2[b]:
                if P1[pos1[a]:pos1[b] + 1] != P2[pos2[a]:pos2[b] + 1]:
                    out.append((a, b))
    return out


def concordant_pairs(P1, P2, D=None):
    """All concordant pairs (a, b), a == b allowed, ordered along P1.

    a precedes (or equals) b on both paths, the prefixes up to a are
    internally disjoint and so are the suffixes from b.
    """
    pos1 = {v: i for i, v in enumerate(P1)}
    pos2 = {v: i for i, v in enumerate(P2)}
    excluded = {P1[0], P1[-1]} & {P2[0], P2[-1]}
    common = [v for v in P1 if v in pos2 and v not in excluded]
    out = []
    for a in common:
        pre1 = set(P1[:pos1[a] + 1])
        pre2 = set(P2[:pos2[a] + 1])
        if (pre1 & pre2) - ({P1[0], a} & {P2[0], a}):
            continue
        for b in common:
            if pos1[a] > pos1[b] or pos2[a] > pos2[b]:
                continue
            suf1 = set(P1[pos1[b]:])
            suf2 = set(P2[pos2[b]:])
            if (suf1 & suf2) - ({b, P1[-1]} & {b, P2[-1]}):
                continue
            out.append((a, b))
    return out


def interaction_complexity(P1, P2, delta):
    """Sum of delta(v, w) over concordant pairs; ``delta`` is a callable."""
    return sum(delta(v, w) for v, w in concordant_pairs(P1, P2))


def brute_delta(g, D, x, y):
    """Distance-critical vertices of (x, y), endpoints included, by deletion and re-solve."""
    base = D.dist(x, y)
    if base >= UNREACH:
        return None
    if x == y:
        return 1
    count = 2
    for u in range(g.n):
        if u in (x, y):
            continue
        h = g.without_vertices([u])
        if Distances(h).dist(x, y) != base:
            count += 1
    return count


def brute_dominators(n, arcs, root):
    """Dominator sets by deleting each vertex and testing reachability."""
    def reach(skip):
        seen = {root} if root != skip else set()
        stack = list(seen)
        while stack:
            u = stack.pop()
            for a, b in arcs:
                if a == u and b != skip and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    base = reach(None)
    doms = {v: {v, root} for v in base}
    for u in range(n):
        if u == root:
            continue
        r = reach(u)
        for v in base:
            if v != u and v not in r:
                doms[v].add(u)
    return doms


# -- symbolic polynomials over GF(2): a set of monomials, each a sorted tuple of variable ids

class SymbolicPoly:
    def __init__(self, monomials=()):
        counts = Counter(tuple(sorted(m)) for m in monomials)
        self.terms = frozenset(m for m, c in counts.items() if c % 2)

    def __add__(self, other):
        return SymbolicPoly(list(self.terms) + list(other.terms))

    def __eq__(self, other):
        return isinstance(other, SymbolicPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def evaluate(self, values):
        total = 0
        for mono in self.terms:
            prod = 1
            for var in mono:
                prod = gf2.mul_reference(prod, int(values[var]))
            total ^= prod
        return total


def monomial(g, path):
    """Variable ids along a path (sorted)."""
    idx = g.arc_index
    var = g.arcs.var
    return tuple(sorted(int(var[idx[(u, v)]]) for u, v in zip(path, path[1:])))


def symbolic_F(g, D, x, y, cap=DEFAULT_CAP):
    return SymbolicPoly(monomial(g, p) for p in enum_paths(g, D, x, y, cap))


def symbolic_Fdisj(g, q, cap=DEFAULT_CAP, D=None):
    s1, t1, s2, t2 = q
    if D is None:
        D = Distances(g)
    L1 = enum_paths(g, D, s1, t1, cap)
    L2 = enum_paths(g, D, s2, t2, cap)
    return SymbolicPoly(monomial(g, P1) + monomial(g, P2)
                        for P1 in L1 for P2 in L2 if internally_disjoint(P1, P2))


def path_weight(g, path):
    idx = g.arc_index
    w = g.arcs.weight
    return sum(int(w[idx[(u, v)]]) for u, v in zip(path, path[1:]))


def simple_cycles(g, cap=DEFAULT_CAP):
    """Every simple directed cycle as a vertex tuple starting at its smallest vertex."""
    a = g.arcs
    succ = {}
    for e in range(a.m):
        succ.setdefault(int(a.tail[e]), []).append(int(a.head[e]))
    out = []
    for start in range(g.n):
        stack = [(start, (start,))]
        while stack:
            u, path = stack.pop()
            for v in succ.get(u, ()):
                if v == start and len(path) >= 2:
                    out.append(path)
                    if len(out) > cap:
                        raise CapExceeded(f"more than {cap} simple cycles; shrink the instance")
                elif v > start and v not in path:
                    stack.append((v, path + (v,)))
    return out


def cycle_weight(g, cycle):
    return path_weight(g, tuple(cycle) + (cycle[0],))
