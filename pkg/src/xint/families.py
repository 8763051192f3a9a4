"""Uniform families of independent vertex sets and the counts attached to them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .graph import Graph, bits, mask_of, popcount

COUNT_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated independent r-sets of ``graph`` in ascending bitmask order."""

    graph: Graph
    r: int
    members: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for s in self.members:
            if s <= prev:
                raise ValueError("members must be strictly increasing")
            prev = s
            if s >> self.graph.n:
                raise ValueError(f"member {bits(s)} leaves the vertex range")
            if popcount(s) != self.r:
                raise ValueError(f"member {bits(s)} does not have {self.r} elements")
            if not self.graph.is_independent(s):
                raise ValueError(f"member {bits(s)} is not independent")

    @classmethod
    def of(cls, graph: Graph, r: int, members: Iterable[int]) -> "SetFamily":
        return cls(graph, r, tuple(sorted(set(members))))

    @classmethod
    def from_lists(cls, graph: Graph, r: int, sets: Iterable[Sequence[int]], one_based: bool = True):
        off = 1 if one_based else 0
        return cls.of(graph, r, (mask_of(v - off for v in s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s: int) -> bool:
        return s in self._index

    @property
    def _index(self) -> frozenset[int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.members)
            object.__setattr__(self, "_idx", idx)
        return idx

    def as_lists(self) -> list[list[int]]:
        return [[v + 1 for v in bits(s)] for s in self.members]

    def to_json(self) -> str:
        return json.dumps(self.as_lists())


def family_from_json(graph: Graph, r: int, text: str) -> SetFamily:
    return SetFamily.from_lists(graph, r, json.loads(text))


def _independent_sets(g: Graph, r: int):
    def rec(start: int, chosen: int, blocked: int, left: int):
        if left == 0:
            yield chosen
            return
        for v in range(start, g.n - left + 1):
            if not blocked >> v & 1:
                yield from rec(v + 1, chosen | 1 << v, blocked | g.adj[v], left - 1)

    yield from rec(0, 0, 0, r)


def enumerate_independent(g: Graph, r: int) -> SetFamily:
    """All independent r-subsets of ``g``; r = 0 gives the family {∅}."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r > g.n:
        return SetFamily(g, r, ())
    return SetFamily.of(g, r, _independent_sets(g, r))


def star(g: Graph, r: int, x: int) -> SetFamily:
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    if r < 1:
        raise ValueError("stars need r >= 1")
    fam = enumerate_independent(g, r)
    return SetFamily(g, r, tuple(s for s in fam.members if s >> x & 1))


def max_star(g: Graph, r: int) -> tuple[int, int]:
    """(size, vertex) of the largest star, smallest vertex on ties."""
    fam = enumerate_independent(g, r)
    counts = [0] * g.n
    for s in fam.members:
        for v in bits(s):
            counts[v] += 1
    best = max(counts)
    return best, counts.index(best)


@dataclass(frozen=True)
class MuResult:
    mu: int
    witness: int


def mu(g: Graph) -> MuResult:
    """Minimum size of a maximal independent set, with the lexicographically
    least minimum as witness."""
    if g.n == 0:
        return MuResult(0, 0)
    best_size = g.n + 1
    best_key: tuple[int, ...] | None = None
    best_set = 0
    closed = [g.adj[v] | 1 << v for v in g.vertices]
    full = g.full_mask

    def rec(chosen: int, dominated: int, size: int):
        nonlocal best_size, best_key, best_set
        if dominated == full:
            key = tuple(bits(chosen))
            if size < best_size or (size == best_size and key < best_key):
                best_size, best_key, best_set = size, key, chosen
            return
        if size + 1 > best_size:
            return
        free = full & ~dominated
        u = (free & -free).bit_length() - 1
        # some vertex of N[u] must join; only undominated ones keep independence
        for w in bits(closed[u] & free):
            rec(chosen | 1 << w, dominated | closed[w], size + 1)

    rec(0, 0, 0)
    return MuResult(best_size, best_set)


def is_maximal_independent(g: Graph, s: int) -> bool:
    if not g.is_independent(s):
        return False
    covered = s
    for v in bits(s):
        covered |= g.adj[v]
    return covered == g.full_mask


def is_intersecting(family: SetFamily | Sequence[int]) -> bool:
    members = family.members if isinstance(family, SetFamily) else list(family)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not a & b:
                return False
    return True


def is_cross_intersecting(families: Sequence[SetFamily]) -> bool:
    return cross_intersection_violation(families) is None


def cross_intersection_violation(families: Sequence[SetFamily]) -> tuple[int, int, int, int] | None:
    """First (i, j, A, B) with i < j, A in family i, B in family j, A ∩ B = ∅."""
    if families:
        g, r = families[0].graph, families[0].r
        for f in families[1:]:
            if f.graph != g or f.r != r:
                raise ValueError("families must share host graph and r")
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            for a in families[i].members:
                for b in families[j].members:
                    if not a & b:
                        return i, j, a, b
    return None


# --- closed-form counts ----------------------------------------------------

def elementary_symmetric(values: Sequence[int], r: int) -> int:
    e = [1] + [0] * r
    for x in values:
        for j in range(r, 0, -1):
            e[j] += e[j - 1] * x
    return e[r] if r >= 0 else 0


def cycle_count(n: int, r: int) -> int:
    """|J^r(C_n)| via J^r(C_n) = J^r(C_{n-1}) + J^{r-1}(C_{n-2})."""
    if n < 2:
        raise ValueError("cycles need n >= 2")
    if r < 0:
        return 0
    # anchors C_2 (an edge) and C_3 (a triangle)
    table = {2: [1, 2], 3: [1, 3]}
    for m in range(4, n + 1):
        prev, prev2 = table[m - 1], table[m - 2]
        row = []
        for j in range(m // 2 + 1):
            a = prev[j] if j < len(prev) else 0
            b = prev2[j - 1] if 0 <= j - 1 < len(prev2) else 0
            row.append(a + b)
        table[m] = row
    row = table[n]
    return row[r] if r < len(row) else 0


def _checked(value: int) -> int:
    if value > COUNT_LIMIT:
        raise OverflowError(f"count {value} exceeds the 64-bit limit")
    return value


def closed_count(kind: str, **p) -> int:
    """Exact closed-form count of one of the families the theorems talk about.

    kinds: ``empty`` (n, r), ``empty-star`` (n, r), ``hilton`` (n, r, k),
    ``matching`` (n, r), ``matching-star`` (n, r), ``borg-leader`` (n, r, k),
    ``cycle`` (n, r), ``clique-union`` (sizes, r).
    """
    if kind == "empty":
        v = comb(p["n"], p["r"])
    elif kind == "empty-star":
        v = comb(p["n"] - 1, p["r"] - 1)
    elif kind == "hilton":
        n, r, k = p["n"], p["r"], p["k"]
        v = comb(n, r) if k * r <= n else k * comb(n - 1, r - 1)
    elif kind == "matching":
        v = comb(p["n"], p["r"]) * 2 ** p["r"]
    elif kind == "matching-star":
        v = comb(p["n"] - 1, p["r"] - 1) * 2 ** (p["r"] - 1)
    elif kind == "borg-leader":
        n, r, k = p["n"], p["r"], p["k"]
        if k * r <= 2 * n:
            v = comb(n, r) * 2**r
        else:
            v = k * comb(n - 1, r - 1) * 2 ** (r - 1)
    elif kind == "cycle":
        v = cycle_count(p["n"], p["r"])
    elif kind == "clique-union":
        v = elementary_symmetric(p["sizes"], p["r"])
    else:
        raise ValueError(f"unknown count kind {kind!r}")
    return _checked(v)
