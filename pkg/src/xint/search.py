"""Exact extremal searches over a family's disjointness graph.

An intersecting subfamily is an independent set of the disjointness graph.
A cross-intersecting k-tuple is a labelling of members by subsets of the
family indices such that two disjoint members never carry different indices.
Labels with two or more indices force every disjoint member to be unlabelled,
exactly like the full label, so optimal labellings only use the empty label,
singletons and ALL.  With X the ALL-labelled members, the best completion puts
every member outside X ∪ N(X) into one family, giving

    value(X) = m + (k - 1)|X| - |N(X)|        over independent X.

The reduced engine searches that expression; the naive engine searches the
full label space and shares none of this reasoning.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

from .families import SetFamily, is_cross_intersecting, is_intersecting
from .graph import bits, popcount

DEFAULT_BUDGET = 20_000_000
NAIVE_LIMIT = 15
EXHAUSTIVE_LIMIT = 20


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"search exceeded node budget ({nodes} > {budget})")
        self.nodes = nodes
        self.budget = budget


@dataclass(frozen=True)
class DisjointnessGraph:
    family: SetFamily
    adj: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.adj)

    @property
    def full(self) -> int:
        return (1 << len(self.adj)) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.m) for j in bits(self.adj[i]) if i < j]


def disjointness_graph(family: SetFamily) -> DisjointnessGraph:
    mem = family.members
    adj = [0] * len(mem)
    for i, a in enumerate(mem):
        for j in range(i + 1, len(mem)):
            if not a & mem[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return DisjointnessGraph(family, tuple(adj))


@dataclass(frozen=True)
class Labeling:
    """Per-member bitmask of the (0-based) families the member belongs to."""

    k: int
    labels: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(popcount(x) for x in self.labels)

    def decode(self, family: SetFamily) -> list[SetFamily]:
        out = []
        for i in range(self.k):
            chosen = tuple(s for s, lab in zip(family.members, self.labels) if lab >> i & 1)
            out.append(SetFamily(family.graph, family.r, chosen))
        return out

    def to_json(self, family: SetFamily) -> list[dict]:
        return [
            {"member": [v + 1 for v in bits(s)], "families": [i + 1 for i in bits(lab)]}
            for s, lab in zip(family.members, self.labels)
        ]


def is_feasible(dg: DisjointnessGraph, lab: Labeling) -> bool:
    for i, j in dg.edges():
        a, b = lab.labels[i], lab.labels[j]
        if a and b and (popcount(a | b) > 1):
            return False
    return True


@dataclass
class SearchResult:
    value: int
    witness: object
    engine: str
    nodes: int
    optimal: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self, family: SetFamily) -> dict:
        if isinstance(self.witness, Labeling):
            wit = self.witness.to_json(family)
        else:
            wit = self.witness.as_lists()
        return {"value": self.value, "labels" if isinstance(self.witness, Labeling) else "family": wit,
                "engine": self.engine, "optimal": self.optimal}


def _require_positive_r(family: SetFamily) -> None:
    if family.r < 1 and len(family):
        raise ValueError("extremal searches need r >= 1")


def _clique_cover_size(adj: tuple[int, ...], cand: int) -> int:
    count = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique = low
        avail = cand & adj[v]
        while avail:
            lo = avail & -avail
            clique |= lo
            avail &= adj[lo.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


class _Counter:
    def __init__(self, budget: int):
        self.nodes = 0
        self.budget = budget

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes, self.budget)


# --- maximum independent sets of the disjointness graph ---------------------

def _mis_search(adj: tuple[int, ...], within: int, counter: _Counter, collect: int | None = None):
    """Lexicographically least maximum independent set inside ``within``.

    Visits the set-enumeration tree in pre-order, which is lexicographic order
    of sorted index tuples, so the first optimum met is the least one.  With
    ``collect`` set to the optimum size, returns all independent sets of that
    size instead.
    """
    # an independent set meets each clique of a clique cover at most once
    best = [0, 0]
    found: list[int] = []
    target = collect

    def rec(x: int, size: int, cand: int):
        counter.tick()
        if target is None:
            if size > best[0]:
                best[0], best[1] = size, x
        elif size == target:
            found.append(x)
            return
        while cand:
            need = best[0] if target is None else target - 1
            if size + _clique_cover_size(adj, cand) <= need:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(x | low, size + 1, cand & ~adj[v])

    rec(0, 0, within)
    return found if target is not None else (best[0], best[1])


def _exhaustive_mis(adj: tuple[int, ...], m: int) -> tuple[int, int]:
    """Enumerate every independent set; kept as an oracle for small m."""
    best_x, best_key = 0, (0, ())
    stack = [(0, 0, 0)]
    while stack:
        i, x, blocked = stack.pop()
        if i == m:
            size, idx = popcount(x), tuple(bits(x))
            if size > best_key[0] or (size == best_key[0] and idx < best_key[1]):
                best_x, best_key = x, (size, idx)
            continue
        stack.append((i + 1, x, blocked))
        if not blocked >> i & 1:
            stack.append((i + 1, x | 1 << i, blocked | adj[i]))
    return best_key[0], best_x


def max_intersecting(family: SetFamily, engine: str = "bnb", budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Largest intersecting subfamily (lexicographically least among maxima)."""
    _require_positive_r(family)
    dg = disjointness_graph(family)
    counter = _Counter(budget)
    if engine == "exhaustive":
        if dg.m > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive engine limited to {EXHAUSTIVE_LIMIT} members")
        size, x = _exhaustive_mis(dg.adj, dg.m)
    elif engine == "bnb":
        size, x = _mis_search(dg.adj, dg.full, counter)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    wit = SetFamily(family.graph, family.r, tuple(family.members[i] for i in bits(x)))
    assert is_intersecting(wit)
    return SearchResult(size, wit, engine, counter.nodes)


def enumerate_max_intersecting(family: SetFamily, budget: int = DEFAULT_BUDGET) -> list[SetFamily]:
    """Every maximum intersecting subfamily, in lexicographic order."""
    res = max_intersecting(family, budget=budget)
    dg = disjointness_graph(family)
    xs = _mis_search(dg.adj, dg.full, _Counter(budget), collect=res.value)
    return [SetFamily(family.graph, family.r, tuple(family.members[i] for i in bits(x))) for x in xs]


# --- maximum cross-intersecting sums ----------------------------------------

class _Reduced:
    """Branch and bound for max (k-1)|X| - |N(X)| over independent X."""

    def __init__(self, dg: DisjointnessGraph, k: int, counter: _Counter):
        self.adj = dg.adj
        self.m = dg.m
        self.k = k
        self.gain = k - 1
        self.counter = counter
        self._alpha_cache: dict[int, int] = {}
        # how many members of an independent set can be disjoint from w
        self.cap = [self._alpha(a) for a in self.adj]

    def _alpha(self, within: int) -> int:
        if within not in self._alpha_cache:
            self._alpha_cache[within] = _mis_search(self.adj, within, self.counter)[0]
        return self._alpha_cache[within]

    def value(self, x_size: int, nx: int) -> int:
        return self.gain * x_size - popcount(nx)

    def _fractional_bound(self, cand: int, nx: int) -> float:
        adj, cap = self.adj, self.cap
        weights = []
        for v in bits(cand):
            g = float(self.gain)
            for w in bits(adj[v] & ~nx):
                c = min(cap[w], popcount(adj[w] & cand))
                g -= 1.0 / c
            if g > 1e-9:
                weights.append((g, v))
        if not weights:
            return 0.0
        # at most one member per clique of the disjointness graph
        weights.sort(key=lambda t: (-t[0], t[1]))
        cliques: list[list] = []  # [mask, max weight]
        for g, v in weights:
            for c in cliques:
                if c[0] & ~adj[v] == 0:
                    c[0] |= 1 << v
                    break
            else:
                cliques.append([1 << v, g])
        return sum(c[1] for c in cliques)

    def _deficiency_bound(self, cand: int, nx: int) -> int:
        """max over all Y ⊆ cand of gain*|Y| - |N(Y) \\ nx|, by Hall deficiency."""
        adj, cap = self.adj, self.gain
        match_right: dict[int, int] = {}
        load = {v: 0 for v in bits(cand)}
        matched = 0

        def augment(v: int, seen: set) -> bool:
            for w in bits(adj[v] & ~nx):
                if w in seen:
                    continue
                seen.add(w)
                owner = match_right.get(w)
                if owner == v:
                    continue
                if owner is None or augment(owner, seen):
                    match_right[w] = v
                    return True
            return False

        for v in bits(cand):
            for _ in range(cap):
                if augment(v, set()):
                    load[v] += 1
                    matched += 1
                else:
                    break
        return cap * len(load) - matched

    def bound(self, cand: int, nx: int, best_gain: int) -> int:
        """Upper bound on the extra value reachable from this node."""
        if not cand:
            return 0
        b = int(self._fractional_bound(cand, nx) + 1e-9)
        if b <= best_gain:
            return b
        return min(b, self._deficiency_bound(cand, nx))

    def search(self, collect: int | None = None) -> Iterator[tuple[int, int, int]]:
        """Yield (value, X, N(X)).  Without ``collect``: yields each strict
        improvement in lexicographic order; the last one is the lexicographically
        least optimum.  With ``collect`` = optimum, yields every optimal X."""
        best = [0 if collect is None else collect]
        strict = collect is None
        adj = self.adj

        def rec(x: int, size: int, nx: int, cand: int):
            self.counter.tick()
            val = self.value(size, nx)
            if strict:
                if val > best[0]:
                    best[0] = val
                    yield val, x, nx
            elif val == best[0]:
                yield val, x, nx
            rest = cand
            while rest:
                slack = best[0] - val if strict else best[0] - val - 1
                if self.bound(rest, nx, slack) <= slack:
                    return
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                yield from rec(x | low, size + 1, nx | adj[v], rest & ~adj[v])

        if strict:
            yield 0, 0, 0
        yield from rec(0, 0, 0, (1 << self.m) - 1)


def _components(adj: tuple[int, ...], within: int) -> list[int]:
    comps = []
    left = within
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            lo = frontier & -frontier
            frontier ^= lo
            new = adj[lo.bit_length() - 1] & within & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        left &= ~comp
    return comps


def _labels_from_x(m: int, k: int, x: int, nx: int, comp_labels: list[tuple[int, int]]) -> Labeling:
    full = (1 << k) - 1
    labels = [0] * m
    for i in bits(x):
        labels[i] = full
    for comp, idx in comp_labels:
        for i in bits(comp):
            labels[i] = 1 << idx
    return Labeling(k, tuple(labels))


class _Naive:
    """Backtracking over every label subset of [k] per member."""

    def __init__(self, dg: DisjointnessGraph, k: int, counter: _Counter):
        self.adj = dg.adj
        self.m = dg.m
        self.k = k
        self.counter = counter
        self.full = (1 << k) - 1
        # greedy matchings of the disjointness edges inside each suffix; two
        # disjoint members hold at most max(|L_a|, |L_b|, 2) labels together
        self.pairs = []
        for i in range(self.m + 1):
            taken, pairs = 0, []
            for a in range(i, self.m):
                if taken >> a & 1:
                    continue
                free = self.adj[a] >> a + 1 << a + 1 & ~taken
                if free:
                    b = (free & -free).bit_length() - 1
                    taken |= 1 << a | 1 << b
                    pairs.append((a, b))
            self.pairs.append((pairs, taken))

    def _upper(self, i: int, allowed: list[int]) -> int:
        pairs, taken = self.pairs[i]
        total = sum(popcount(allowed[j]) for j in range(i, self.m) if not taken >> j & 1)
        for a, b in pairs:
            pa, pb = popcount(allowed[a]), popcount(allowed[b])
            total += min(pa + pb, max(pa, pb, 2))
        return total

    def _constraint(self, lab: int) -> int:
        if lab == 0:
            return self.full
        if lab & (lab - 1) == 0:
            return lab
        return 0

    def run(self, target: int | None = None) -> tuple[int, list[tuple[int, ...]]]:
        """Best value and canonical optimal labellings (index symmetry broken by
        order of first use).  With ``target`` set, collect all of that value."""
        m, k, adj = self.m, self.k, self.adj
        best = [-1 if target is None else target]
        found: list[tuple[int, ...]] = []
        labels = [0] * m

        def rec(i: int, value: int, used: int, allowed: list[int]):
            self.counter.tick()
            if i == m:
                if target is None:
                    if value > best[0]:
                        best[0] = value
                        found[:] = [tuple(labels)]
                elif value == target:
                    found.append(tuple(labels))
                return
            ub = value + self._upper(i, allowed)
            if ub < best[0] or (target is None and ub == best[0]):
                return
            al = allowed[i]
            old_mask = (1 << used) - 1
            new_ok = al == self.full  # fresh indices only if unconstrained
            choices = []
            sub = al & old_mask
            s = sub
            while True:
                for t in range(0, (k - used if new_ok else 0) + 1):
                    lab = s | (((1 << t) - 1) << used)
                    choices.append((popcount(lab), lab, used + t))
                if s == 0:
                    break
                s = (s - 1) & sub
            choices.sort(key=lambda c: (-c[0], c[1]))
            for size, lab, nused in choices:
                cons = self._constraint(lab)
                nxt = allowed
                if cons != self.full:
                    nxt = list(allowed)
                    for j in bits(adj[i] >> (i + 1)):
                        nxt[i + 1 + j] &= cons
                labels[i] = lab
                rec(i + 1, value + size, nused, nxt)
            labels[i] = 0

        rec(0, 0, 0, [self.full] * m)
        return best[0], found


def _expand_symmetry(k: int, canon: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    out = set()
    for lab in canon:
        for perm in permutations(range(k)):
            out.add(tuple(sum(1 << perm[i] for i in bits(x)) for x in lab))
    return out


def max_cross_sum(family: SetFamily, k: int, engine: str = "reduced", budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Maximum of Σ|A_i| over cross-intersecting k-tuples of subfamilies."""
    if k < 2:
        raise ValueError("k must be >= 2")
    _require_positive_r(family)
    dg = disjointness_graph(family)
    counter = _Counter(budget)
    if engine == "naive":
        if dg.m > NAIVE_LIMIT:
            raise ValueError(f"naive engine limited to {NAIVE_LIMIT} members, got {dg.m}")
        value, found = _Naive(dg, k, counter).run()
        lab = Labeling(k, found[0])
    elif engine == "reduced":
        red = _Reduced(dg, k, counter)
        gain, x, nx = 0, 0, 0
        for gain, x, nx in red.search():
            pass
        rest = dg.full & ~(x | nx)
        lab = _labels_from_x(dg.m, k, x, nx, [(rest, 0)])
        value = dg.m + gain
    else:
        raise ValueError(f"unknown engine {engine!r}")
    assert lab.value == value and is_feasible(dg, lab)
    return SearchResult(value, lab, engine, counter.nodes)


@dataclass
class Optima:
    value: int
    labelings: list[Labeling]
    truncated: bool


def enumerate_optima(family: SetFamily, k: int, limit: int = 10_000, engine: str = "reduced",
                     budget: int = DEFAULT_BUDGET) -> Optima:
    """All optimal labellings (up to ``limit``) in ascending label-tuple order."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    best = max_cross_sum(family, k, engine=engine, budget=budget)
    dg = disjointness_graph(family)
    counter = _Counter(budget)
    if engine == "naive":
        _, canon = _Naive(dg, k, counter).run(target=best.value)
        labs = sorted(_expand_symmetry(k, canon))
        truncated = len(labs) > limit
        return Optima(best.value, [Labeling(k, t) for t in labs[:limit]], truncated)

    red = _Reduced(dg, k, counter)
    gain = best.value - dg.m
    out: set[tuple[int, ...]] = set()
    truncated = False
    for _, x, nx in red.search(collect=gain):
        comps = _components(dg.adj, dg.full & ~(x | nx))
        for choice in _product(len(comps), k):
            lab = _labels_from_x(dg.m, k, x, nx, list(zip(comps, choice)))
            out.add(lab.labels)
            if len(out) > limit:
                truncated = True
                break
        if truncated:
            break
    labs = sorted(out)[:limit]
    return Optima(best.value, [Labeling(k, t) for t in labs], truncated)


def _product(n: int, k: int) -> Iterator[tuple[int, ...]]:
    idx = [0] * n
    while True:
        yield tuple(idx)
        j = n - 1
        while j >= 0 and idx[j] == k - 1:
            idx[j] = 0
            j -= 1
        if j < 0:
            return
        idx[j] += 1


def validate_witness(family: SetFamily, lab: Labeling) -> bool:
    """Decode a labelling into k families and re-check cross-intersection."""
    fams = lab.decode(family)
    return is_cross_intersecting(fams) and sum(len(f) for f in fams) == lab.value


def result_json(family: SetFamily, res: SearchResult) -> str:
    return json.dumps(res.to_json(family), sort_keys=True)
