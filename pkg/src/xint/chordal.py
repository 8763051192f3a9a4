"""Chordality via simplicial elimination, plus a seeded chordal generator."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph, bits, popcount


def _is_clique(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        if mask & ~(g.adj[v] | 1 << v):
            return False
    return True


def is_simplicial(g: Graph, v: int, within: int | None = None) -> bool:
    """Whether the neighbourhood of v (restricted to ``within``) is a clique."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    alive = g.full_mask if within is None else within
    return _is_clique(g, g.adj[v] & alive)


def find_elimination_ordering(g: Graph) -> list[int] | None:
    """Greedy smallest-index simplicial elimination; None when g is not chordal."""
    alive = g.full_mask
    order = []
    while alive:
        for v in bits(alive):
            if is_simplicial(g, v, alive):
                order.append(v)
                alive &= ~(1 << v)
                break
        else:
            return None
    return order


def is_elimination_ordering(g: Graph, order: list[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    alive = g.full_mask
    for v in order:
        if not is_simplicial(g, v, alive):
            return False
        alive &= ~(1 << v)
    return True


def is_chordal(g: Graph) -> bool:
    return find_elimination_ordering(g) is not None


def find_induced_long_cycle(g: Graph, max_n: int = 10) -> list[int] | None:
    """Brute force: vertices of an induced cycle of length >= 4, in cycle order."""
    if g.n > max_n:
        raise ValueError(f"brute-force cycle search limited to n <= {max_n}")
    for size in range(4, g.n + 1):
        for combo in combinations(range(g.n), size):
            mask = sum(1 << v for v in combo)
            if all(popcount(g.adj[v] & mask) == 2 for v in combo):
                cyc = [combo[0]]
                prev = -1
                while True:
                    cur = cyc[-1]
                    nxt = [u for u in bits(g.adj[cur] & mask) if u != prev]
                    step = nxt[0]
                    if step == cyc[0]:
                        break
                    prev = cur
                    cyc.append(step)
                if len(cyc) == size:
                    return cyc
    return None


def random_chordal(n: int, density: float, seed: int | random.Random) -> Graph:
    """Chordal graph grown by reverse elimination: each new vertex joins a
    random clique of earlier vertices, then labels are shuffled."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    adj = [0] * n
    for v in range(1, n):
        earlier = list(range(v))
        rng.shuffle(earlier)
        chosen = 0
        for u in earlier:
            if rng.random() < density and chosen & ~adj[u] == 0:
                chosen |= 1 << u
        for u in bits(chosen):
            adj[u] |= 1 << v
        adj[v] = chosen
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[u], perm[w]) for u in range(n) for w in bits(adj[u]) if u < w]
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)
