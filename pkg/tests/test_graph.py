from fractions import Fraction

import networkx as nx
import pytest

from cdspack_core.exceptions import GraphInputError
from cdspack_core.graph import (
    Graph,
    as_fraction,
    boundary,
    check_weights,
    closed_neighborhood,
    connected_components,
    induced_is_connected,
    is_connected,
    is_connected_dominating,
    is_dominating,
    open_neighborhood,
)
from conftest import connected_graphs, make_graph


def test_from_edges_canonical_form():
    G = make_graph(4, [(2, 1), (0, 1), (1, 2), (3, 0)])
    assert G.adjacency == ((1, 3), (0, 2), (1,), (0,))
    assert G.edges() == [(0, 1), (0, 3), (1, 2)]
    assert G.edge_count() == 3


def test_from_edges_rejects_bad_edges():
    with pytest.raises(GraphInputError):
        make_graph(3, [(0, 0)])
    with pytest.raises(GraphInputError):
        make_graph(3, [(0, 3)])


def test_model_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        Graph(vertex_count=2, adjacency=((1,), ()))
    with pytest.raises(ValueError):
        Graph(vertex_count=3, adjacency=((2, 1), (0,), (0,)))


def test_from_networkx_relabels_sorted():
    G = Graph.from_networkx(nx.grid_2d_graph(2, 3))
    assert G.vertex_count == 6
    assert G.has_edge(0, 1) and G.has_edge(0, 3) and not G.has_edge(2, 3)


def test_closed_neighborhood(p3, star):
    assert closed_neighborhood(p3, 1) == {0, 1, 2}
    assert closed_neighborhood(make_graph(2, []), 1) == {1}
    assert closed_neighborhood(make_graph(5, [(0, i) for i in range(1, 5)]), 0) == {0, 1, 2, 3, 4}
    assert open_neighborhood(star, 0) == {1, 2, 3}
    with pytest.raises(GraphInputError):
        closed_neighborhood(p3, 3)


def test_boundary(p4, c5):
    assert boundary(p4, {0}) == {1}
    assert boundary(p4, {0, 1, 2, 3}) == frozenset()
    assert boundary(c5, {0}) == {1, 4}
    with pytest.raises(GraphInputError):
        boundary(p4, {7})


def test_is_dominating(p3, star):
    assert is_dominating(star, {0})
    assert not is_dominating(p3, {0})
    assert is_dominating(p3, {0, 1, 2})
    assert not is_dominating(p3, set())


def test_is_connected_dominating(c5, k4):
    assert is_connected_dominating(c5, {0, 1, 2})
    assert not is_connected_dominating(c5, {0, 2})
    assert all(is_connected_dominating(k4, {v}) for v in k4.vertices)
    assert not is_connected_dominating(k4, set())


def test_connected_components(p3):
    assert connected_components(p3, set()) == []
    assert connected_components(p3, {0, 2}) == [{0}, {2}]
    assert connected_components(p3, {0, 1, 2}) == [{0, 1, 2}]


def test_induced_is_connected_and_is_connected(p3):
    assert induced_is_connected(p3, {0, 1})
    assert not induced_is_connected(p3, {0, 2})
    assert is_connected(p3)
    assert not is_connected(make_graph(2, []))
    assert not is_connected(make_graph(0, []))


def test_as_fraction():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(2) == Fraction(2)
    with pytest.raises(GraphInputError):
        as_fraction(0.5)
    with pytest.raises(GraphInputError):
        as_fraction("x")
    with pytest.raises(GraphInputError):
        as_fraction(True)


def test_check_weights(p3):
    assert check_weights(p3, {0: 1, 1: "1/2", 2: 0}) == {0: 1, 1: Fraction(1, 2), 2: 0}
    with pytest.raises(GraphInputError):
        check_weights(p3, {0: 1, 1: 1})
    with pytest.raises(GraphInputError):
        check_weights(p3, {0: 1, 1: -1, 2: 1})
    with pytest.raises(GraphInputError):
        check_weights(p3, {0: 1, 1: 1, 2: 1, 5: 1})


def test_predicates_agree_on_small_graphs():
    for G in connected_graphs(5):
        for mask in range(1, 2 ** G.vertex_count):
            D = frozenset(v for v in G.vertices if mask >> v & 1)
            covered = frozenset().union(*(closed_neighborhood(G, v) for v in D))
            assert is_dominating(G, D) == (covered == frozenset(G.vertices))
            if is_connected_dominating(G, D):
                assert is_dominating(G, D)
            assert not boundary(G, D) & D
