from fractions import Fraction
from typing import List

import networkx as nx
import pytest

from cdspack_core.graph import Graph


def make_graph(n, edges) -> Graph:
    return Graph.from_edges(n, edges)


def connected_graphs(max_n: int, min_n: int = 1) -> List[Graph]:
    """Every connected graph with min_n..max_n vertices from the networkx atlas (max_n <= 7)."""
    return [
        Graph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if min_n <= g.number_of_nodes() <= max_n and nx.is_connected(g)
    ]


def unit(G: Graph):
    return {v: Fraction(1) for v in G.vertices}


@pytest.fixture
def p3():
    # a(0) - b(1) - c(2)
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def p4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def c4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def c5():
    return make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def k3():
    return make_graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def k4():
    return make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def star():
    # center 0, leaves 1..3
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def star_costs():
    return {0: Fraction(2), 1: Fraction(1), 2: Fraction(1), 3: Fraction(1)}
