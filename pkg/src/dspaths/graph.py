"""Weighted graph container, text format and random instance generators."""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InfeasibleEdgeCount,
    KindMismatch,
    MalformedHeader,
    MalformedLine,
    NonPositiveUndirectedWeight,
    SelfLoop,
)

DIRECTED = "directed"
UNDIRECTED = "undirected"
KINDS = (DIRECTED, UNDIRECTED)


@dataclass(frozen=True, eq=False)
class ArcView:
    """Directed arcs of a graph plus CSR adjacency in both directions.

    An undirected edge ``i`` becomes arcs ``2i`` (u->v) and ``2i+1`` (v->u);
    both carry the edge's variable id.
    """

    n: int
    tail: np.ndarray
    head: np.ndarray
    weight: np.ndarray
    var: np.ndarray
    out_ptr: np.ndarray
    out_arcs: np.ndarray
    in_ptr: np.ndarray
    in_arcs: np.ndarray

    @property
    def m(self):
        return int(self.tail.size)

    def out_of(self, v):
        return self.out_arcs[self.out_ptr[v]:self.out_ptr[v + 1]]

    def into(self, v):
        return self.in_arcs[self.in_ptr[v]:self.in_ptr[v + 1]]


def _csr(n, keys):
    order = np.argsort(keys, kind="stable").astype(np.int64)
    counts = np.bincount(keys, minlength=n)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, order


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    kind: str
    n: int
    tails: np.ndarray
    heads: np.ndarray
    weights: np.ndarray
    edge_ids: np.ndarray = field(default=None)

    def __post_init__(self):
        for name in ("tails", "heads", "weights"):
            object.__setattr__(self, name, np.ascontiguousarray(getattr(self, name), dtype=np.int64))
        if self.edge_ids is None:
            object.__setattr__(self, "edge_ids", np.arange(self.tails.size, dtype=np.int64))
        else:
            object.__setattr__(self, "edge_ids", np.ascontiguousarray(self.edge_ids, dtype=np.int64))

    @classmethod
    def from_edges(cls, kind, n, edges, edge_ids=None):
        """Build and validate a graph from ``(u, v, w)`` triples."""
        edges = list(edges)
        validate_edges(kind, n, edges)
        arr = np.array(edges, dtype=np.int64).reshape(-1, 3)
        return cls(kind, int(n), arr[:, 0], arr[:, 1], arr[:, 2], edge_ids)

    @property
    def m(self):
        return int(self.tails.size)

    @property
    def directed(self):
        return self.kind == DIRECTED

    @property
    def num_vars(self):
        return int(self.edge_ids.max()) + 1 if self.m else 0

    def edges(self):
        return list(zip(self.tails.tolist(), self.heads.tolist(), self.weights.tolist()))

    @cached_property
    def arcs(self):
        if self.directed:
            tail, head, weight, var = self.tails, self.heads, self.weights, self.edge_ids
        else:
            m = self.m
            tail = np.empty(2 * m, dtype=np.int64)
            head = np.empty(2 * m, dtype=np.int64)
            tail[0::2], tail[1::2] = self.tails, self.heads
            head[0::2], head[1::2] = self.heads, self.tails
            weight = np.repeat(self.weights, 2)
            var = np.repeat(self.edge_ids, 2)
        out_ptr, out_arcs = _csr(self.n, tail)
        in_ptr, in_arcs = _csr(self.n, head)
        return ArcView(self.n, tail, head, weight, var, out_ptr, out_arcs, in_ptr, in_arcs)

    @cached_property
    def arc_index(self):
        """Map ``(tail, head) -> arc id``."""
        a = self.arcs
        return {(int(u), int(v)): i for i, (u, v) in enumerate(zip(a.tail, a.head))}

    def without_vertices(self, removed):
        """Same vertex ids, every arc touching ``removed`` dropped; variable ids kept."""
        removed = np.asarray(sorted(set(int(x) for x in removed)), dtype=np.int64)
        keep = ~(np.isin(self.tails, removed) | np.isin(self.heads, removed))
        return WeightedGraph(self.kind, self.n, self.tails[keep], self.heads[keep],
                             self.weights[keep], self.edge_ids[keep])

    def reversed(self):
        if not self.directed:
            return self
        return WeightedGraph(self.kind, self.n, self.heads, self.tails, self.weights, self.edge_ids)


def validate_edges(kind, n, edges, lines=None):
    if kind not in KINDS:
        raise MalformedHeader(f"unknown graph kind {kind!r}")
    if n < 0:
        raise MalformedHeader("vertex count must be non-negative")
    seen = set()
    for i, (u, v, w) in enumerate(edges):
        line = lines[i] if lines is not None else None
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"vertex id out of range in edge ({u}, {v}) for n={n}", line)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", line)
        key = (u, v) if kind == DIRECTED else (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})", line)
        seen.add(key)
        if kind == UNDIRECTED and w <= 0:
            raise NonPositiveUndirectedWeight(f"undirected edge ({u}, {v}) has weight {w} <= 0", line)
        if not (-(1 << 63) <= w < (1 << 63)):
            raise MalformedLine(f"weight {w} does not fit in 64 bits", line)


def _int(token, line, what):
    try:
        return int(token, 10)
    except ValueError:
        raise MalformedLine(f"expected integer {what}, got {token!r}", line) from None


def parse(stream):
    """Read a graph from a text stream or string."""
    text = stream if isinstance(stream, str) else stream.read()
    header = None
    edges = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] not in KINDS:
                raise MalformedHeader("expected '<directed|undirected> <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedHeader("vertex and edge counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise MalformedHeader("counts must be non-negative", lineno)
            header = (parts[0], n, m, lineno)
            continue
        if len(parts) != 3:
            raise MalformedLine("expected '<u> <v> <w>'", lineno)
        edges.append(tuple(_int(p, lineno, what) for p, what in zip(parts, ("tail", "head", "weight"))))
        lines.append(lineno)
    if header is None:
        raise MalformedHeader("missing header line", 1)
    kind, n, m, hline = header
    if len(edges) != m:
        raise MalformedHeader(f"header announces {m} edges but {len(edges)} were given", hline)
    validate_edges(kind, n, edges, lines)
    return WeightedGraph.from_edges(kind, n, edges)


def serialize(g):
    out = [f"{g.kind} {g.n} {g.m}"]
    out.extend(f"{u} {v} {w}" for u, v, w in g.edges())
    return "\n".join(out) + "\n"


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh)


def write_graph(g, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))


def bidirect(g):
    """Directed copy of an undirected graph; both orientations share one variable id."""
    if g.directed:
        raise KindMismatch("bidirect expects an undirected graph")
    a = g.arcs
    return WeightedGraph(DIRECTED, g.n, a.tail, a.head, a.weight, a.var)


def _max_edges(n, kind):
    full = n * (n - 1)
    return full if kind == DIRECTED else full // 2


def _sample_pairs(rng, n, m, kind):
    total = _max_edges(n, kind)
    if m == 0:
        return np.empty((0, 2), dtype=np.int64)
    if total <= 4_000_000:
        idx = rng.choice(total, size=m, replace=False)
        if kind == DIRECTED:
            u = idx // (n - 1)
            r = idx % (n - 1)
            v = np.where(r < u, r, r + 1)
        else:
            # unrank i -> (u, v), u < v, row-major over the upper triangle
            iu, iv = np.triu_indices(n, 1)
            u, v = iu[idx], iv[idx]
        return np.stack([u, v], axis=1).astype(np.int64)
    chosen = {}
    while len(chosen) < m:
        need = m - len(chosen)
        u = rng.integers(0, n, size=2 * need + 16)
        v = rng.integers(0, n, size=2 * need + 16)
        for a, b in zip(u.tolist(), v.tolist()):
            if a == b:
                continue
            key = (a, b) if kind == DIRECTED else (min(a, b), max(a, b))
            if key not in chosen:
                chosen[key] = None
                if len(chosen) == m:
                    break
    return np.array(list(chosen), dtype=np.int64)


def gen_random(n, m, weight_range, kind, seed):
    """Uniform simple graph with exactly ``m`` edges, reproducible per seed."""
    if kind not in KINDS:
        raise KindMismatch(f"unknown kind {kind!r}")
    if m < 0 or m > _max_edges(n, kind):
        raise InfeasibleEdgeCount(f"{m} edges do not fit in a simple {kind} graph on {n} vertices")
    lo, hi = weight_range
    if lo > hi:
        raise InfeasibleEdgeCount(f"empty weight range [{lo}, {hi}]")
    if kind == UNDIRECTED and lo <= 0:
        raise NonPositiveUndirectedWeight("undirected weights must be positive")
    rng = np.random.default_rng(seed)
    pairs = _sample_pairs(rng, n, m, kind)
    w = rng.integers(lo, hi + 1, size=m, dtype=np.int64)
    return WeightedGraph(kind, n, pairs[:, 0], pairs[:, 1], w)


def gen_random_dag(n, m, weight_range, seed):
    """Random DAG: a uniform simple graph on a hidden random topological order."""
    if m < 0 or m > _max_edges(n, UNDIRECTED):
        raise InfeasibleEdgeCount(f"{m} edges do not fit in a DAG on {n} vertices")
    lo, hi = weight_range
    rng = np.random.default_rng(seed)
    pairs = _sample_pairs(rng, n, m, UNDIRECTED)
    perm = rng.permutation(n)
    w = rng.integers(lo, hi + 1, size=m, dtype=np.int64)
    return WeightedGraph(DIRECTED, n, perm[pairs[:, 0]], perm[pairs[:, 1]], w)


def gen_local_dag(n, m, weight_range, span, seed):
    """Random DAG whose arcs jump at most ``span`` steps along a hidden order.

    Long shortest paths with many ties between them, unlike gen_random_dag
    where reachability stays small at low density.
    """
    span = max(1, min(int(span), n - 1))
    cap = sum(n - d for d in range(1, span + 1))
    if m < 0 or m > cap:
        raise InfeasibleEdgeCount(f"{m} edges do not fit in a span-{span} DAG on {n} vertices")
    lo, hi = weight_range
    rng = np.random.default_rng(seed)
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        k = 2 * (m - len(keys)) + 16
        d = rng.integers(1, span + 1, size=k)
        u = rng.integers(0, n, size=k)
        ok = u + d < n
        fresh = u[ok] * n + u[ok] + d[ok]
        keys = np.concatenate([keys, fresh])
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
    keys = keys[:m]
    perm = rng.permutation(n)
    w = rng.integers(lo, hi + 1, size=m, dtype=np.int64)
    return WeightedGraph(DIRECTED, n, perm[keys // n], perm[keys % n], w)
