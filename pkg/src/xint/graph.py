"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks.

Vertices are ``0..n-1`` internally.  Everything that crosses the I/O boundary
(JSON, CLI output) uses ``1..n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 64


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"graph size {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {tuple(e)} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop {tuple(e)}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_independent(self, mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if self.adj[low.bit_length() - 1] & mask:
                return False
            m ^= low
        return True

    def induced(self, keep: int) -> tuple["Graph", "VertexMap"]:
        """Subgraph induced on the vertex mask ``keep``, relabelled compactly."""
        mapping: list[int | None] = [None] * self.n
        order = bits(keep)
        for new, old in enumerate(order):
            mapping[old] = new
        adj = []
        for old in order:
            adj.append(mask_of(mapping[u] for u in bits(self.adj[old] & keep)))
        return Graph(len(order), tuple(adj)), VertexMap(tuple(mapping), len(order))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u + 1, v + 1] for u, v in self.edges()]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        edges = []
        for e in data.get("edges", []):
            if len(e) != 2:
                raise ValueError(f"bad edge {e!r}")
            edges.append((int(e[0]) - 1, int(e[1]) - 1))
        return build_edges(n, edges)


@dataclass(frozen=True)
class VertexMap:
    """Total map from old vertices to new ones; ``None`` marks a deleted vertex."""

    mapping: tuple[int | None, ...]
    target_n: int

    def __call__(self, v: int) -> int | None:
        return self.mapping[v]

    def apply(self, mask: int) -> int:
        """Push a vertex set through the map.  Deleted vertices are an error."""
        out = 0
        for v in bits(mask):
            w = self.mapping[v]
            if w is None:
                raise ValueError(f"vertex {v} does not survive this map")
            out |= 1 << w
        return out

    def compose(self, other: "VertexMap") -> "VertexMap":
        """``other`` after ``self``."""
        return VertexMap(
            tuple(None if w is None else other.mapping[w] for w in self.mapping),
            other.target_n,
        )


# --- builders -------------------------------------------------------------

def empty(n: int) -> Graph:
    if n < 0:
        raise ValueError("empty graph needs n >= 0")
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """C_n; C_2 is a single edge and C_3 a triangle."""
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def matching(n: int) -> Graph:
    """M_n: n disjoint edges {2i, 2i+1} on 2n vertices."""
    if n < 1:
        raise ValueError("matching needs n >= 1 edges")
    return Graph.from_edges(2 * n, [(2 * i, 2 * i + 1) for i in range(n)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return clique_union([n])


def clique_union(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("clique sizes must be a non-empty list of positive ints")
    edges = []
    start = 0
    for s in sizes:
        edges.extend(combinations(range(start, start + s), 2))
        start += s
    return Graph.from_edges(start, edges)


def build_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph from an edge list; duplicate edges are merged silently."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Graph.from_edges(n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [a << g.n for a in h.adj]
    return Graph(g.n + h.n, tuple(adj))


_BUILDERS = {
    "empty": empty,
    "path": path,
    "cycle": cycle,
    "matching": matching,
    "clique": clique,
}


def parse_spec(spec: str) -> Graph:
    """Build a graph from a string such as ``cycle:7`` or ``cliques:2,3,3``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind in ("cliques", "clique_union", "clique-union"):
            return clique_union([int(x) for x in arg.split(",") if x.strip()])
        if kind in _BUILDERS:
            return _BUILDERS[kind](int(arg))
    except ValueError as exc:
        raise ValueError(f"bad graph spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown graph kind in {spec!r}")


# --- transforms -----------------------------------------------------------

def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")


def closed_neighborhood(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return g.adj[v] | 1 << v


def delete_vertex(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    _check_vertex(g, v)
    return g.induced(g.full_mask & ~(1 << v))


def delete_closed_neighborhood(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    return g.induced(g.full_mask & ~closed_neighborhood(g, v))


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, VertexMap]:
    """Merge the edge uv into the smaller endpoint; output is simple."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise ValueError(f"{{{u}, {v}}} is not an edge")
    keep, gone = min(u, v), max(u, v)
    mapping: list[int | None] = []
    for w in range(g.n):
        if w == gone:
            mapping.append(None)
        else:
            mapping.append(w if w < gone else w - 1)
    mapping[gone] = mapping[keep]
    edges = set()
    for a, b in g.edges():
        if {a, b} == {keep, gone}:
            continue
        a2, b2 = mapping[a], mapping[b]
        if a2 != b2:
            edges.add((min(a2, b2), max(a2, b2)))
    return Graph.from_edges(g.n - 1, sorted(edges)), VertexMap(tuple(mapping), g.n - 1)


def is_dominated(g: Graph, v1: int, v2: int) -> bool:
    """True iff N[v1] is contained in N[v2]; this forces v1 ~ v2."""
    if v1 == v2:
        raise ValueError("is_dominated needs two distinct vertices")
    n1 = closed_neighborhood(g, v1)
    n2 = closed_neighborhood(g, v2)
    dominated = n1 & ~n2 == 0
    if dominated:
        assert g.has_edge(v1, v2)
    return dominated


def dominated_pairs(g: Graph) -> list[tuple[int, int]]:
    return [(a, b) for a in g.vertices for b in g.vertices if a != b and is_dominated(g, a, b)]


# --- canonical form -------------------------------------------------------

def _refine(g: Graph, colors: list[int]) -> list[int]:
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Isomorphism-invariant certificate: colour refinement plus
    individualisation, pruned by automorphisms discovered at the leaves."""
    best = None
    leaves: dict[tuple, list[int]] = {}
    autos: list[list[int]] = []

    def certificate(colors: list[int]) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(
            (min(colors[a], colors[b]), max(colors[a], colors[b])) for a, b in g.edges()
        ))

    def search(colors: list[int], prefix: list[int]) -> None:
        nonlocal best
        colors = _refine(g, colors)
        if len(set(colors)) == g.n:
            cert = certificate(colors)
            if cert in leaves:
                first = leaves[cert]
                where = {lab: v for v, lab in enumerate(first)}
                autos.append([where[colors[v]] for v in range(g.n)])
            else:
                leaves[cert] = colors
            if best is None or cert < best:
                best = cert
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(g.n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if any(_same_orbit(autos, prefix, v, t) for t in tried):
                continue
            tried.append(v)
            # individualise v: give it a colour below its cell
            search([2 * c + (0 if u == v or c != target else 1) for u, c in enumerate(colors)], prefix + [v])

    search([0] * g.n, [])
    return g.n, best if best is not None else ()


def _same_orbit(autos: list[list[int]], prefix: list[int], a: int, b: int) -> bool:
    gens = [p for p in autos if all(p[x] == x for x in prefix)]
    seen, stack = {a}, [a]
    while stack:
        v = stack.pop()
        if v == b:
            return True
        for p in gens:
            w = p[v]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return False
    return canonical_form(g) == canonical_form(h)
