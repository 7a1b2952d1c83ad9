"""Vertex-weighted simple graphs and the combinatorial primitives built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

VertexSet = tuple  # sorted tuple of vertex indices

ISOMORPHISM_CAP = 16
GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Invalid graph data: bad endpoint, self-loop, weight, or encoding."""


class CapExceeded(ValueError):
    """The input is larger than an operation's configured size cap."""

    def __init__(self, operation: str, n: int, cap: int):
        super().__init__(f"{operation}: n={n} exceeds cap {cap}")
        self.operation = operation
        self.n = n
        self.cap = cap


def check_cap(operation: str, n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(operation, n, cap)


def to_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, float or ``"p/q"`` string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise GraphError(f"not a number: {x!r}")
    if isinstance(x, (int, float, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"not a rational: {x!r}") from exc
    raise GraphError(f"not a number: {x!r}")


@dataclass(frozen=True)
class VertexWeightedGraph:
    """Simple undirected graph on ``0..n-1`` with positive rational weights.

    ``adj[i]`` is an int bitmask of the neighbours of ``i``.
    """

    n: int
    adj: tuple[int, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.adj) != self.n or len(self.weights) != self.n:
            raise GraphError("adjacency/weight length does not match n")
        for i, row in enumerate(self.adj):
            if row >> self.n:
                raise GraphError(f"vertex {i} has a neighbour out of range")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
            r = row
            while r:
                low = r & -r
                j = low.bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")
                r ^= low
        for i, w in enumerate(self.weights):
            if not isinstance(w, Fraction):
                raise GraphError(f"weight {i} is not a Fraction")
            if w <= 0:
                raise GraphError(f"weight {i} is not positive: {w}")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return _members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _members(self.adj[i]) if i < j]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges():
            A[i, j] = A[j, i] = True
        return A

    def weight_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights], dtype=float)

    def masks_u64(self) -> np.ndarray:
        check_cap("bitmask kernels", self.n, 64)
        return np.array(self.adj, dtype=np.uint64)

    def with_weights(self, weights: Sequence) -> "VertexWeightedGraph":
        return VertexWeightedGraph(self.n, self.adj, _weights(self.n, weights))

    def is_stable(self, vs: Iterable[int]) -> bool:
        m = _mask(vs)
        return all(not (self.adj[v] & m) for v in _members(m))

    def is_clique(self, vs: Iterable[int]) -> bool:
        m = _mask(vs)
        return all((self.adj[v] | 1 << v) & m == m for v in _members(m))

    def __repr__(self):
        return f"VertexWeightedGraph(n={self.n}, edges={self.num_edges})"


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _weights(n: int, weights) -> tuple[Fraction, ...]:
    if weights is None:
        return (Fraction(1),) * n
    ws = tuple(to_fraction(w) for w in weights)
    if len(ws) != n:
        raise GraphError(f"expected {n} weights, got {len(ws)}")
    for i, w in enumerate(ws):
        if w <= 0:
            raise GraphError(f"weight {i} is not positive: {w}")
    return ws


def from_edge_list(n: int, edges: Iterable[Sequence[int]], weights=None) -> VertexWeightedGraph:
    """Build a graph from explicit edges; weights default to 1."""
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"vertex count must be a nonnegative integer, got {n!r}")
    adj = [0] * n
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge must be a pair: {e!r}")
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) has an endpoint outside 0..{n - 1}")
        if i == j:
            raise GraphError(f"self-loop at vertex {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return VertexWeightedGraph(n, tuple(adj), _weights(n, weights))


def from_adjacency_matrix(A, weights=None) -> VertexWeightedGraph:
    A = np.asarray(A, dtype=bool)
    n = A.shape[0]
    if A.shape != (n, n) or not (A == A.T).all():
        raise GraphError("adjacency matrix must be square and symmetric")
    return from_edge_list(n, zip(*np.nonzero(np.triu(A, 1))), weights)


def complement(g: VertexWeightedGraph) -> VertexWeightedGraph:
    full = (1 << g.n) - 1
    adj = tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adj))
    return VertexWeightedGraph(g.n, adj, g.weights)


def circulant(n: int, jumps: Iterable[int]) -> VertexWeightedGraph:
    """Circulant graph: ``i ~ j`` iff ``|i - j| mod n`` is a jump or its mirror."""
    if n < 3:
        raise GraphError(f"circulant needs n >= 3, got {n}")
    js = sorted(set(int(j) for j in jumps))
    if not js:
        raise GraphError("circulant needs at least one jump")
    for j in js:
        if not 1 <= j <= n // 2:
            raise GraphError(f"jump {j} outside 1..{n // 2}")
    edges = {tuple(sorted((i, (i + j) % n))) for i in range(n) for j in js}
    return from_edge_list(n, sorted(edges))


def cycle_graph(n: int) -> VertexWeightedGraph:
    return circulant(n, [1])


def complete_graph(n: int, weights=None) -> VertexWeightedGraph:
    return from_edge_list(n, combinations(range(n), 2), weights)


def empty_graph(n: int, weights=None) -> VertexWeightedGraph:
    return from_edge_list(n, [], weights)


def path_graph(n: int) -> VertexWeightedGraph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n: int, p: float, rng: np.random.Generator, weights=None) -> VertexWeightedGraph:
    edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
    return from_edge_list(n, edges, weights)


def induced_subgraph(g: VertexWeightedGraph, keep: Iterable[int]) -> VertexWeightedGraph:
    """Subgraph on ``keep``, reindexed densely in increasing vertex order."""
    ks = sorted(set(int(v) for v in keep))
    for v in ks:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    pos = {v: i for i, v in enumerate(ks)}
    adj = []
    for v in ks:
        row = 0
        for u in _members(g.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        adj.append(row)
    return VertexWeightedGraph(len(ks), tuple(adj), tuple(g.weights[v] for v in ks))


# -- maximal cliques ---------------------------------------------------------


def degeneracy_order(g: VertexWeightedGraph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    deg = [r.bit_count() for r in g.adj]
    alive = (1 << g.n) - 1
    order = []
    for _ in range(g.n):
        v = min(_members(alive), key=lambda u: (deg[u], u))
        order.append(v)
        alive &= ~(1 << v)
        for u in _members(g.adj[v] & alive):
            deg[u] -= 1
    return order


def enumerate_maximal_cliques(g: VertexWeightedGraph) -> list[VertexSet]:
    """All maximal cliques, as sorted tuples in lexicographic order.

    Pivoted Bron-Kerbosch over a degeneracy ordering.
    """
    adj = g.adj
    found: list[VertexSet] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            found.append(tuple(_members(R)))
            return
        pivot = max(_members(P | X), key=lambda u: ((P & adj[u]).bit_count(), -u))
        for v in _members(P & ~adj[pivot]):
            bv = 1 << v
            expand(R | bv, P & adj[v], X & adj[v])
            P &= ~bv
            X |= bv

    done = 0
    for v in degeneracy_order(g):
        bv = 1 << v
        expand(bv, adj[v] & ~done, adj[v] & done)
        done |= bv
    return sorted(found)


# -- isomorphism ---------------------------------------------------------------


def _refine(graphs: Sequence[VertexWeightedGraph]) -> list[list[int]]:
    # joint 1-dimensional Weisfeiler-Leman colouring so colours are comparable
    colors = [[r.bit_count() for r in g.adj] for g in graphs]
    while True:
        sigs = [
            [(c[v], tuple(sorted(c[u] for u in _members(g.adj[v])))) for v in range(g.n)]
            for g, c in zip(graphs, colors)
        ]
        palette = {s: k for k, s in enumerate(sorted({s for sg in sigs for s in sg}))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if all(len(set(a)) == len(set(b)) for a, b in zip(new, colors)):
            return new
        colors = new


def is_isomorphic(g1: VertexWeightedGraph, g2: VertexWeightedGraph) -> tuple[bool, dict[int, int] | None]:
    """Adjacency-preserving bijection ``g1 -> g2`` if one exists (weights ignored)."""
    check_cap("is_isomorphic", max(g1.n, g2.n), ISOMORPHISM_CAP)
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False, None
    c1, c2 = _refine([g1, g2])
    if sorted(c1) != sorted(c2):
        return False, None
    n = g1.n
    class_size = {c: c1.count(c) for c in set(c1)}
    order = sorted(range(n), key=lambda v: (class_size[c1[v]], c1[v], v))
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)

    mapping: dict[int, int] = {}
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = order[k]
        for u in by_color[c1[v]]:
            if used >> u & 1:
                continue
            if all(g1.has_edge(v, a) == g2.has_edge(u, b) for a, b in mapping.items()):
                mapping[v] = u
                used |= 1 << u
                if extend(k + 1):
                    return True
                del mapping[v]
                used &= ~(1 << u)
        return False

    if extend(0):
        return True, dict(sorted(mapping.items()))
    return False, None


# -- graph6 --------------------------------------------------------------------


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(g: VertexWeightedGraph, header: bool = False) -> str:
    bits = [g.has_edge(i, j) for j in range(1, g.n) for i in range(j)]
    bits += [False] * (-len(bits) % 6)
    body = "".join(
        chr(63 + sum(b << (5 - k) for k, b in enumerate(bits[t : t + 6]))) for t in range(0, len(bits), 6)
    )
    return (GRAPH6_HEADER if header else "") + _g6_size(g.n) + body


def parse_graph6(text: str) -> VertexWeightedGraph:
    """Decode a graph6 string (optional ``>>graph6<<`` header) to a unit-weight graph."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise GraphError("graph6: empty input")
    vals = []
    for pos, ch in enumerate(s):
        o = ord(ch)
        if not 63 <= o <= 126:
            raise GraphError(f"graph6: invalid character {ch!r} at offset {pos}")
        vals.append(o - 63)
    if vals[0] != 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphError("graph6: truncated 36-bit length field")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        rest = vals[8:]
    else:
        if len(vals) < 4:
            raise GraphError("graph6: truncated 18-bit length field")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        rest = vals[4:]
        if n <= 62:
            raise GraphError(f"graph6: length {n} must use the short form")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(rest) < need:
        raise GraphError(f"graph6: expected {need} data characters, got {len(rest)}")
    if len(rest) > need:
        raise GraphError(f"graph6: trailing garbage after {need} data characters")
    bits = [(v >> (5 - k)) & 1 for v in rest for k in range(6)]
    if any(bits[nbits:]):
        raise GraphError("graph6: nonzero padding bits")
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return from_edge_list(n, edges)


# -- JSON edge-list ------------------------------------------------------------


def graph_to_json(g: VertexWeightedGraph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if not g.unit_weights:
        out["weights"] = [str(w) for w in g.weights]
    return out


def graph_from_json(obj) -> VertexWeightedGraph:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphError('graph JSON needs keys "n" and "edges"')
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise GraphError('"n" must be an integer')
    edges = obj["edges"]
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise GraphError('"edges" must be a list of [i, j] pairs')
    for e in edges:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise GraphError(f"edge endpoints must be integers: {e!r}")
    return from_edge_list(n, edges, obj.get("weights"))
