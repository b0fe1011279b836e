"""Validity checks for witness paths."""
from .shortest_paths import UNREACH


def path_problems(g, D, path, x, y):
    """Reasons why ``path`` is not a shortest x -> y path (empty list if it is)."""
    path = list(path)
    if not path or path[0] != x or path[-1] != y:
        return [f"path {path} does not run from {x} to {y}"]
    if len(set(path)) != len(path):
        return [f"path {path} repeats a vertex"]
    idx = g.arc_index
    w = g.arcs.weight
    total = 0
    for u, v in zip(path, path[1:]):
        e = idx.get((u, v))
        if e is None:
            return [f"({u}, {v}) is not an arc"]
        total += int(w[e])
    d = D.dist(x, y)
    if d >= UNREACH or total != d:
        return [f"path {path} has weight {total}, shortest is {d}"]
    return []


def witness_problems(g, D, q, P1, P2, k=None, disjoint=False):
    s1, t1, s2, t2 = q
    problems = path_problems(g, D, P1, s1, t1) + path_problems(g, D, P2, s2, t2)
    common = set(P1) & set(P2)
    if disjoint:
        extra = common - ({s1, t1} & {s2, t2})
        if extra:
            problems.append(f"paths share internal vertices {sorted(extra)}")
    if k is not None and len(common) != k:
        problems.append(f"paths share {len(common)} vertices, expected {k}")
    return problems


def is_valid_witness(g, D, q, P1, P2, k=None, disjoint=False):
    return not witness_problems(g, D, q, P1, P2, k, disjoint)
