import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xint import graph as gc
from xint.chordal import random_graph
from xint.families import (
    COUNT_LIMIT,
    SetFamily,
    closed_count,
    cross_intersection_violation,
    cycle_count,
    elementary_symmetric,
    enumerate_independent,
    family_from_json,
    is_cross_intersecting,
    is_intersecting,
    is_maximal_independent,
    max_star,
    mu,
    star,
)
from xint.graph import bits, mask_of

from helpers import fixture_graphs


def brute_independent(g, r):
    return sorted(
        mask_of(c) for c in combinations(range(g.n), r) if g.is_independent(mask_of(c))
    )


def brute_mu(g):
    best = g.n
    for size in range(g.n + 1):
        for c in combinations(range(g.n), size):
            if is_maximal_independent(g, mask_of(c)):
                return size
    return best


def test_enumerate_examples():
    assert len(enumerate_independent(gc.empty(4), 2)) == 6
    assert len(enumerate_independent(gc.matching(3), 3)) == 8
    fam = enumerate_independent(gc.cycle(5), 2)
    assert fam.as_lists() == [[1, 3], [1, 4], [2, 4], [2, 5], [3, 5]]
    assert len(fam) == 5


def test_enumerate_edge_cases():
    assert enumerate_independent(gc.empty(3), 0).members == (0,)
    assert len(enumerate_independent(gc.empty(3), 4)) == 0
    with pytest.raises(ValueError):
        enumerate_independent(gc.empty(3), -1)


def test_members_are_ascending_bitmasks():
    fam = enumerate_independent(gc.cycle(7), 3)
    assert list(fam.members) == sorted(fam.members)


def test_family_validation():
    g = gc.path(3)
    with pytest.raises(ValueError):
        SetFamily.from_lists(g, 2, [[1, 2]])  # not independent
    with pytest.raises(ValueError):
        SetFamily.from_lists(g, 2, [[1]])  # wrong size
    with pytest.raises(ValueError):
        SetFamily(g, 1, (2, 1))  # not ascending
    fam = SetFamily.from_lists(g, 2, [[1, 3], [3, 1]])
    assert len(fam) == 1 and mask_of([0, 2]) in fam
    assert family_from_json(g, 2, "[[1, 3]]") == fam


def test_star_examples():
    assert len(star(gc.empty(4), 2, 0)) == 3
    assert len(star(gc.matching(3), 2, 0)) == 4
    assert len(star(gc.clique(3), 2, 0)) == 0
    with pytest.raises(ValueError):
        star(gc.empty(3), 0, 0)
    with pytest.raises(ValueError):
        star(gc.empty(3), 1, 3)


def test_max_star_prefers_small_clique():
    size, x = max_star(gc.clique_union([2, 3, 3]), 2)
    assert size == 6 and x in (0, 1)


def test_mu_examples():
    assert mu(gc.clique(5)).mu == 1
    assert mu(gc.cycle(6)).mu == 2
    assert mu(gc.matching(3)).mu == 3
    assert mu(gc.empty(0)).mu == 0
    res = mu(gc.cycle(6))
    assert bits(res.witness) == [0, 3]  # lexicographically least
    assert is_maximal_independent(gc.cycle(6), res.witness)


def test_closed_count_examples():
    assert closed_count("matching", n=3, r=2) == 12
    assert closed_count("cycle", n=5, r=2) == 5
    assert closed_count("clique-union", sizes=[2, 3], r=2) == 6
    assert closed_count("hilton", n=4, r=2, k=2) == 6
    assert closed_count("hilton", n=4, r=2, k=3) == 9
    assert closed_count("hilton", n=6, r=2, k=5) == 25
    assert closed_count("borg-leader", n=3, r=2, k=2) == 12
    assert closed_count("borg-leader", n=3, r=2, k=3) == 12
    assert closed_count("borg-leader", n=2, r=1, k=2) == 4
    with pytest.raises(ValueError):
        closed_count("wheel", n=3)


def test_closed_count_overflow():
    assert closed_count("empty", n=66, r=33) <= COUNT_LIMIT
    with pytest.raises(OverflowError):
        closed_count("matching", n=64, r=32)


def test_cycle_count_small():
    assert [cycle_count(2, r) for r in range(3)] == [1, 2, 0]
    assert [cycle_count(3, r) for r in range(3)] == [1, 3, 0]
    assert [cycle_count(6, r) for r in range(4)] == [1, 6, 9, 2]


def test_elementary_symmetric():
    assert elementary_symmetric([2, 3], 2) == 6
    assert elementary_symmetric([2, 2, 2], 2) == 12
    assert elementary_symmetric([1, 2, 3], 0) == 1
    assert elementary_symmetric([1, 2], 3) == 0


@pytest.mark.parametrize("name,g", fixture_graphs(), ids=lambda x: x if isinstance(x, str) else "")
def test_enumeration_matches_brute_force(name, g):
    for r in range(g.n + 1):
        assert list(enumerate_independent(g, r).members) == brute_independent(g, r)


@pytest.mark.parametrize("n", range(1, 11))
def test_closed_counts_match_enumeration(n):
    for r in range(n + 1):
        assert len(enumerate_independent(gc.empty(n), r)) == closed_count("empty", n=n, r=r)
        if r >= 1:
            assert len(star(gc.empty(n), r, 0)) == closed_count("empty-star", n=n, r=r)
        if n >= 2:
            assert len(enumerate_independent(gc.cycle(n), r)) == closed_count("cycle", n=n, r=r)
    if 2 * n <= 10:
        for r in range(n + 1):
            m = gc.matching(n)
            assert len(enumerate_independent(m, r)) == closed_count("matching", n=n, r=r)
            if r >= 1:
                assert len(star(m, r, 0)) == closed_count("matching-star", n=n, r=r)


@pytest.mark.parametrize("sizes", [[1], [2, 3], [2, 2, 2], [1, 3, 4], [4, 3], [2, 2, 3, 3]])
def test_clique_union_count(sizes):
    g = gc.clique_union(sizes)
    for r in range(len(sizes) + 2):
        assert len(enumerate_independent(g, r)) == closed_count("clique-union", sizes=sizes, r=r)


@pytest.mark.parametrize("name,g", fixture_graphs(), ids=lambda x: x if isinstance(x, str) else "")
def test_partition_identity(name, g):
    for r in range(1, g.n + 1):
        total = len(enumerate_independent(g, r))
        for v in g.vertices:
            minus = gc.delete_vertex(g, v)[0]
            down = gc.delete_closed_neighborhood(g, v)[0]
            assert total == len(enumerate_independent(minus, r)) + len(enumerate_independent(down, r - 1))


@pytest.mark.parametrize("name,g", fixture_graphs(), ids=lambda x: x if isinstance(x, str) else "")
def test_star_double_counting(name, g):
    for r in range(1, g.n + 1):
        total = len(enumerate_independent(g, r))
        assert sum(len(star(g, r, x)) for x in g.vertices) == r * total


def test_intersecting_examples():
    g = gc.empty(4)
    assert is_intersecting(star(g, 2, 0))
    assert not is_intersecting(SetFamily.from_lists(g, 2, [[1, 2], [3, 4]]))
    assert is_intersecting(SetFamily(g, 2, ()))


def test_cross_intersecting_examples():
    g = gc.empty(4)
    full = enumerate_independent(g, 2)
    nothing = SetFamily(g, 2, ())
    assert is_cross_intersecting([full, nothing])
    s = star(g, 2, 1)
    assert is_cross_intersecting([s, s, s])
    a = SetFamily.from_lists(g, 2, [[1, 2]])
    b = SetFamily.from_lists(g, 2, [[3, 4]])
    assert not is_cross_intersecting([a, b])
    assert cross_intersection_violation([a, b]) == (0, 1, mask_of([0, 1]), mask_of([2, 3]))
    with pytest.raises(ValueError):
        is_cross_intersecting([a, SetFamily(g, 1, ())])


graphs = st.builds(
    lambda n, p, seed: random_graph(n, p, random.Random(seed)),
    st.integers(1, 9), st.floats(0, 1), st.integers(0, 10**6),
)


@settings(max_examples=200, deadline=None)
@given(graphs)
def test_mu_matches_brute_force(g):
    res = mu(g)
    assert res.mu == brute_mu(g)
    assert is_maximal_independent(g, res.witness)
    assert len(bits(res.witness)) == res.mu


@settings(max_examples=200, deadline=None)
@given(graphs)
def test_mu_inequalities_on_dominated_pairs(g):
    m = mu(g).mu
    for v1, v2 in gc.dominated_pairs(g):
        assert mu(gc.delete_vertex(g, v2)[0]).mu >= m
        assert mu(gc.delete_closed_neighborhood(g, v2)[0]).mu + 1 >= m


def test_mu_lemma_on_path():
    g = gc.path(3)
    assert mu(g).mu == 1
    assert mu(gc.delete_vertex(g, 1)[0]).mu == 2
    assert mu(gc.delete_closed_neighborhood(g, 1)[0]).mu == 0


def test_hilton_bound_is_the_larger_branch():
    # the piecewise bound equals the max of the two branch formulas
    for n in range(2, 9):
        for r in range(1, n // 2 + 1):
            for k in range(2, 7):
                assert closed_count("hilton", n=n, r=r, k=k) == max(comb(n, r), k * comb(n - 1, r - 1))
