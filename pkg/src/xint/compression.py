"""Shifting operators and family splits used in the induction arguments.

Every operation re-checks the combinatorial claims it relies on and raises
:class:`ClaimViolation` with the offending sets when one fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import graph as gc
from .families import (
    SetFamily,
    cross_intersection_violation,
    is_cross_intersecting,
    is_intersecting,
)
from .graph import Graph, VertexMap, bits


class ClaimViolation(AssertionError):
    """A claim that should hold on every valid input was observed to fail."""

    def __init__(self, claim: str, witness: dict):
        super().__init__(f"{claim} violated: {witness}")
        self.claim = claim
        self.witness = witness


def shift(members: Sequence[int], src: int, dst: int) -> list[int]:
    """Replace src by dst in each member containing src, unless the shifted set
    is already in the (pre-shift) family."""
    present = set(members)
    out = []
    for s in members:
        if s >> src & 1:
            t = s & ~(1 << src) | 1 << dst
            out.append(s if t in present else t)
        else:
            out.append(s)
    return out


def _one_based(mask: int) -> list[int]:
    return [v + 1 for v in bits(mask)]


@dataclass
class CompressedPair:
    a_shifted: SetFamily
    b_shifted: SetFamily
    a_with: SetFamily  # sets that contained v_i, minus v_i, hosted on G ↓ v_i
    b_with: SetFamily
    a_without: SetFamily  # sets avoiding v_i, hosted on G - v_i
    b_without: SetFamily
    down_map: VertexMap
    minus_map: VertexMap


def compress_pair_chordal(g: Graph, a: SetFamily, b: SetFamily, v1: int, vi: int) -> CompressedPair:
    """Shift v_i -> v_1 in both families and split by v_i."""
    if not gc.is_dominated(g, v1, vi):
        raise ValueError(f"N[{v1}] is not contained in N[{vi}]")
    if a.graph != g or b.graph != g or a.r != b.r:
        raise ValueError("families must live on g with a common r")
    if not is_cross_intersecting([a, b]):
        raise ValueError("input pair is not cross-intersecting")
    r = a.r

    a_shifted = shift(a.members, vi, v1)
    b_shifted = shift(b.members, vi, v1)
    for before, after in ((a.members, a_shifted), (b.members, b_shifted)):
        if len(set(after)) != len(before):
            raise ClaimViolation("injectivity of the shift", {"family": [_one_based(s) for s in before]})
        for s in after:
            if not g.is_independent(s):
                raise ClaimViolation("independence of shifted sets", {"set": _one_based(s)})
    a2 = SetFamily.of(g, r, a_shifted)
    b2 = SetFamily.of(g, r, b_shifted)

    down, down_map = gc.delete_closed_neighborhood(g, vi)
    minus, minus_map = gc.delete_vertex(g, vi)
    pick = 1 << vi

    def split(fam: SetFamily) -> tuple[SetFamily, SetFamily]:
        with_vi = [down_map.apply(s & ~pick) for s in fam.members if s & pick]
        without = [minus_map.apply(s) for s in fam.members if not s & pick]
        return SetFamily.of(down, r - 1, with_vi), SetFamily.of(minus, r, without)

    a_with, a_without = split(a2)
    b_with, b_without = split(b2)
    if len(a_with) + len(a_without) != len(a) or len(b_with) + len(b_without) != len(b):
        raise ClaimViolation("size split", {"v1": v1 + 1, "vi": vi + 1})
    for label, pair in (("down", (a_with, b_with)), ("minus", (a_without, b_without))):
        bad = cross_intersection_violation(list(pair))
        if bad is not None:
            raise ClaimViolation(
                f"compressed pair ({label}) cross-intersecting",
                {"A": _one_based(bad[2]), "B": _one_based(bad[3]), "v1": v1 + 1, "vi": vi + 1},
            )
    return CompressedPair(a2, b2, a_with, b_with, a_without, b_without, down_map, minus_map)


def lift_to_auxiliary(g: Graph, families: Sequence[SetFamily]) -> tuple[Graph, SetFamily]:
    """Attach a new K_k and tag the members of family i with its i-th vertex.

    The union of the tagged families is intersecting exactly when the input is
    cross-intersecting.
    """
    k = len(families)
    if k < 1:
        raise ValueError("need at least one family")
    r = families[0].r
    if any(f.r != r or f.graph != g for f in families):
        raise ValueError("families must share host graph and r")
    if not is_cross_intersecting(families):
        raise ValueError("families are not cross-intersecting")
    g2 = gc.disjoint_union(g, gc.clique(k))
    members = []
    for i, f in enumerate(families):
        tag = 1 << (g.n + i)
        members.extend(s | tag for s in f.members)
    lifted = SetFamily.of(g2, r + 1, members)
    if len(lifted) != sum(len(f) for f in families):
        raise ClaimViolation("lifted size", {"k": k})
    if not is_intersecting(lifted):
        raise ClaimViolation("lifted family intersecting", {"k": k})
    return g2, lifted


@dataclass
class CycleSplit:
    """Parts of a family on C_n after removing the two special subfamilies and
    shifting n -> n-1 (1-based names; stored 0-based)."""

    n: int
    source: SetFamily
    special_end: SetFamily  # {S - {n} : n-2, n in S}, on C_{n-2}
    special_wrap: SetFamily  # {S - {n-1} : 1, n-1 in S}, on C_{n-2}
    rest: SetFamily  # the remainder after dropping both special subfamilies, on C_n
    shifted_rest: SetFamily  # the shifted remainder, on C_n
    kept: SetFamily  # shifted sets avoiding n, on C_{n-1}
    moved: SetFamily  # shifted sets containing n, minus n, on C_{n-2}
    reduced: SetFamily = field(init=False)  # union of the three C_{n-2} parts

    def __post_init__(self):
        union = set(self.special_end.members) | set(self.special_wrap.members) | set(self.moved.members)
        self.reduced = SetFamily.of(self.moved.graph, self.moved.r, union)


def cycle_split(fam: SetFamily) -> CycleSplit:
    g = fam.graph
    n = g.n
    if n < 4:
        raise ValueError("cycle_split needs n >= 4")
    if g != gc.cycle(n):
        raise ValueError("host graph is not the standard cycle")
    r = fam.r
    if r < 1:
        raise ValueError("cycle_split needs r >= 1")
    first, a, b, c = 0, n - 3, n - 2, n - 1  # 1-based vertices 1, n-2, n-1, n

    # contracting {n-1, n} and then {n-2, n-1} keeps the surviving labels
    c1, m1 = gc.contract_edge(g, b, c)
    c2, m2 = gc.contract_edge(c1, a, b)
    assert c1 == gc.cycle(n - 1) and c2 == gc.cycle(n - 2)

    both_end = 1 << a | 1 << c
    both_wrap = 1 << first | 1 << b
    end_sets = [s for s in fam.members if s & both_end == both_end]
    wrap_sets = [s for s in fam.members if s & both_wrap == both_wrap]
    rest = [s for s in fam.members if s & both_end != both_end and s & both_wrap != both_wrap]

    shifted = shift(rest, c, b)
    if len(set(shifted)) != len(rest):
        raise ClaimViolation("injectivity of the cycle shift", {"rest": [_one_based(s) for s in rest]})
    kept = [s for s in shifted if not s >> c & 1]
    moved = [s & ~(1 << c) for s in shifted if s >> c & 1]

    special_end = SetFamily.of(c2, r - 1, (s & ~(1 << c) for s in end_sets))
    special_wrap = SetFamily.of(c2, r - 1, (s & ~(1 << b) for s in wrap_sets))
    split = CycleSplit(
        n=n,
        source=fam,
        special_end=special_end,
        special_wrap=special_wrap,
        rest=SetFamily.of(g, r, rest),
        shifted_rest=SetFamily.of(g, r, shifted),
        kept=SetFamily.of(c1, r, (m1.apply(s) for s in kept)),
        moved=SetFamily.of(c2, r - 1, moved),
    )

    rest_set = set(rest)
    for s in moved:
        if s | 1 << b not in rest_set:
            raise ClaimViolation("moved sets return with n-1", {"set": _one_based(s)})
    parts = [set(special_end.members), set(special_wrap.members), set(moved)]
    for i in range(3):
        for j in range(i + 1, 3):
            common = parts[i] & parts[j]
            if common:
                raise ClaimViolation(
                    "reduced parts pairwise disjoint",
                    {"parts": (i + 1, j + 1), "set": _one_based(min(common))},
                )
    if len(fam) != len(split.kept) + len(split.reduced):
        raise ClaimViolation("size bookkeeping", {"n": n, "size": len(fam)})
    return split


def verify_cross_claims(split_a: CycleSplit, split_b: CycleSplit) -> tuple[bool, dict | None]:
    """Both reduced pairs must be cross-intersecting; returns (ok, counterexample)."""
    for label, pair in (
        ("kept", (split_a.kept, split_b.kept)),
        ("reduced", (split_a.reduced, split_b.reduced)),
    ):
        bad = cross_intersection_violation(list(pair))
        if bad is not None:
            return False, {"pair": label, "A": _one_based(bad[2]), "B": _one_based(bad[3])}
    return True, None


def cycle_pipeline(a: SetFamily, b: SetFamily) -> dict:
    """Run the cycle split on a cross-intersecting pair and return a JSON trace."""
    if not is_cross_intersecting([a, b]):
        raise ValueError("input pair is not cross-intersecting")
    sa, sb = cycle_split(a), cycle_split(b)
    ok, bad = verify_cross_claims(sa, sb)

    def dump(s: CycleSplit) -> dict:
        return {
            "special_end": s.special_end.as_lists(),
            "special_wrap": s.special_wrap.as_lists(),
            "rest": s.rest.as_lists(),
            "shifted_rest": s.shifted_rest.as_lists(),
            "kept": s.kept.as_lists(),
            "moved": s.moved.as_lists(),
        }

    return {"n": a.graph.n, "r": a.r, "A": dump(sa), "B": dump(sb), "claims_hold": ok, "counterexample": bad}


def chordal_pipeline(g: Graph, a: SetFamily, b: SetFamily, v1: int, vi: int) -> dict:
    cp = compress_pair_chordal(g, a, b, v1, vi)
    return {
        "v1": v1 + 1,
        "vi": vi + 1,
        "A_shifted": cp.a_shifted.as_lists(),
        "B_shifted": cp.b_shifted.as_lists(),
        "A_with": cp.a_with.as_lists(),
        "B_with": cp.b_with.as_lists(),
        "A_without": cp.a_without.as_lists(),
        "B_without": cp.b_without.as_lists(),
        "down_graph": cp.a_with.graph.to_json(),
        "minus_graph": cp.a_without.graph.to_json(),
    }
