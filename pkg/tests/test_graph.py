import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xint import graph as gc
from xint.chordal import random_graph
from xint.graph import Graph, VertexMap, bits, mask_of


def edge_set(g):
    return set(g.edges())


def test_builders_basic_shapes():
    c5 = gc.cycle(5)
    assert c5.n == 5 and c5.num_edges() == 5
    assert all(c5.degree(v) == 2 for v in c5.vertices)

    m3 = gc.matching(3)
    assert m3.n == 6 and edge_set(m3) == {(0, 1), (2, 3), (4, 5)}

    cu = gc.clique_union([2, 3])
    assert cu.n == 5 and cu.num_edges() == 4


def test_small_cycles_follow_the_edge_convention():
    assert edge_set(gc.cycle(2)) == {(0, 1)}
    assert gc.cycle(3) == gc.clique(3)
    with pytest.raises(ValueError):
        gc.cycle(1)


def test_edges_dedup_and_validation():
    g = gc.build_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.num_edges() == 1
    with pytest.raises(ValueError):
        gc.build_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        gc.build_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        gc.empty(65)


def test_parse_spec():
    assert gc.parse_spec("cycle:7") == gc.cycle(7)
    assert gc.parse_spec("cliques:2,3,3") == gc.clique_union([2, 3, 3])
    assert gc.parse_spec("matching:4") == gc.matching(4)
    assert gc.parse_spec("empty:5") == gc.empty(5)
    with pytest.raises(ValueError):
        gc.parse_spec("wheel:5")


def test_json_roundtrip_is_one_based():
    g = gc.path(3)
    data = g.to_json()
    assert data == {"n": 3, "edges": [[1, 2], [2, 3]]}
    assert Graph.from_json(json.dumps(data)) == g


@pytest.mark.parametrize("v", range(4))
def test_delete_vertex_of_c4_is_p3(v):
    h, vm = gc.delete_vertex(gc.cycle(4), v)
    assert gc.is_isomorphic(h, gc.path(3))
    assert vm(v) is None


def test_delete_vertex_examples():
    assert gc.delete_vertex(gc.clique(3), 1)[0] == gc.clique(2)
    h, vm = gc.delete_vertex(gc.matching(2), 0)
    assert h.n == 3 and h.num_edges() == 1
    assert vm.mapping == (None, 0, 1, 2)
    with pytest.raises(ValueError):
        gc.delete_vertex(gc.clique(3), 3)


def test_delete_closed_neighborhood_examples():
    for v in range(5):
        h, _ = gc.delete_closed_neighborhood(gc.cycle(5), v)
        assert h == gc.path(2)
    assert gc.delete_closed_neighborhood(gc.clique(4), 2)[0].n == 0
    assert gc.delete_closed_neighborhood(gc.empty(5), 3)[0] == gc.empty(4)


def test_contract_edge_examples():
    h, vm = gc.contract_edge(gc.cycle(5), 3, 4)
    assert h == gc.cycle(4)
    assert vm(3) == vm(4) == 3
    assert gc.contract_edge(gc.cycle(3), 0, 2)[0] == gc.cycle(2)
    h, _ = gc.contract_edge(gc.path(2), 0, 1)
    assert h.n == 1 and h.num_edges() == 0
    with pytest.raises(ValueError):
        gc.contract_edge(gc.cycle(5), 0, 2)


@pytest.mark.parametrize("n", range(3, 13))
def test_contracting_a_cycle_edge_gives_the_shorter_cycle(n):
    h, _ = gc.contract_edge(gc.cycle(n), n - 2, n - 1)
    assert gc.canonical_form(h) == gc.canonical_form(gc.cycle(n - 1))


def test_closed_neighborhood_examples():
    assert bits(gc.closed_neighborhood(gc.cycle(5), 0)) == [0, 1, 4]
    assert bits(gc.closed_neighborhood(gc.empty(3), 2)) == [2]
    assert bits(gc.closed_neighborhood(gc.clique(3), 0)) == [0, 1, 2]


def test_is_dominated_examples():
    assert gc.is_dominated(gc.clique(3), 0, 1)
    assert gc.is_dominated(gc.path(3), 0, 1)
    assert not gc.is_dominated(gc.matching(2), 0, 2)
    assert not gc.is_dominated(gc.path(3), 1, 0)


def test_vertex_map_apply_and_compose():
    _, m1 = gc.delete_vertex(gc.path(5), 1)
    _, m2 = gc.delete_vertex(gc.path(4), 0)
    both = m1.compose(m2)
    assert both.mapping == (None, None, 0, 1, 2)
    assert both.apply(mask_of([2, 4])) == mask_of([0, 2])
    with pytest.raises(ValueError):
        both.apply(mask_of([0]))


def test_canonical_form_distinguishes():
    assert gc.is_isomorphic(gc.path(4), gc.build_edges(4, [(2, 0), (0, 3), (3, 1)]))
    assert not gc.is_isomorphic(gc.path(4), gc.build_edges(4, [(0, 1), (0, 2), (0, 3)]))
    assert not gc.is_isomorphic(gc.cycle(6), gc.clique_union([3, 3]))


graphs = st.builds(
    lambda n, p, seed: random_graph(n, p, random.Random(seed)),
    st.integers(1, 9), st.floats(0, 1), st.integers(0, 10**6),
)


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_isomorphic_relabelling_has_same_canonical_form(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = gc.build_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert gc.canonical_form(g) == gc.canonical_form(h)


@settings(max_examples=150, deadline=None)
@given(graphs)
def test_domination_forces_adjacency(g):
    for v1 in g.vertices:
        for v2 in g.vertices:
            if v1 != v2 and gc.is_dominated(g, v1, v2):
                assert g.has_edge(v1, v2)


@settings(max_examples=150, deadline=None)
@given(graphs, st.data())
def test_non_adjacent_deletions_commute(g, data):
    if g.n < 2:
        return
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    if u == v or g.has_edge(u, v):
        return
    g1, m1 = gc.delete_vertex(g, u)
    a, _ = gc.delete_vertex(g1, m1(v))
    g2, m2 = gc.delete_vertex(g, v)
    b, _ = gc.delete_vertex(g2, m2(u))
    assert a == b


@settings(max_examples=100, deadline=None)
@given(graphs)
def test_transform_maps_are_compact_and_order_preserving(g):
    for v in g.vertices:
        for h, vm in (gc.delete_vertex(g, v), gc.delete_closed_neighborhood(g, v)):
            image = [x for x in vm.mapping if x is not None]
            assert image == list(range(h.n))
            assert isinstance(vm, VertexMap) and vm.target_n == h.n
            for a, b in g.edges():
                if vm(a) is not None and vm(b) is not None:
                    assert h.has_edge(vm(a), vm(b))


@settings(max_examples=300, deadline=None)
@given(graphs, graphs)
def test_canonical_form_matches_vf2(g, h):
    nx = pytest.importorskip("networkx")

    def to_nx(x):
        out = nx.Graph()
        out.add_nodes_from(range(x.n))
        out.add_edges_from(x.edges())
        return out

    assert gc.is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))
