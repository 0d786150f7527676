from fractions import Fraction

import pytest

from cdspack_core.exceptions import GraphInputError, ResourceLimitError, SteinerInfeasibleError
from cdspack_core.generators import path_graph, random_weights, star_graph
from cdspack_core.graph import induced_is_connected
from cdspack_core.steiner import (
    SteinerInstance,
    exact_steiner_tree,
    harmonic_number,
    solve_nwst_lp,
    spider_greedy,
    within_greedy_guarantee,
)
from conftest import connected_graphs, make_graph


def terminal_weights(G, terminals, other=1):
    return {v: Fraction(0) if v in terminals else Fraction(other) for v in G.vertices}


def test_build_validates():
    G = make_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(GraphInputError):
        SteinerInstance.build(G, terminal_weights(G, ()), [])
    with pytest.raises(GraphInputError):
        SteinerInstance.build(G, terminal_weights(G, ()), [5])
    with pytest.raises(GraphInputError):
        SteinerInstance.build(G, {0: 1, 1: -1, 2: 1}, [0])


def test_spider_star_takes_center():
    G = star_graph(4)
    leaves = {1, 2, 3, 4}
    solution = spider_greedy(SteinerInstance.build(G, terminal_weights(G, leaves), leaves))
    assert solution.nodes == {0, 1, 2, 3, 4}
    assert solution.weight == 1


def test_spider_cycle_two_terminals(c4):
    inst = SteinerInstance.build(c4, terminal_weights(c4, {0, 2}), {0, 2})
    solution = spider_greedy(inst, certify=True)
    assert solution.nodes == {0, 1, 2}
    assert solution.weight == 1
    assert solution.lp_value == 1
    assert solution.certified_ratio == 1
    assert solution.to_json_dict() == {
        "nodes": [0, 1, 2],
        "weight": "1",
        "certified_ratio": "1",
        "lp_value": "1",
    }


def test_single_terminal_is_its_own_tree(p3):
    inst = SteinerInstance.build(p3, {0: 2, 1: 1, 2: 1}, [0])
    solution = spider_greedy(inst, certify=True)
    assert solution.nodes == {0}
    assert solution.weight == 2
    assert solution.certified_ratio is None
    with pytest.raises(GraphInputError):
        solve_nwst_lp(inst)


def test_disconnected_terminals():
    G = make_graph(4, [(0, 1), (2, 3)])
    inst = SteinerInstance.build(G, terminal_weights(G, {0, 3}), {0, 3})
    with pytest.raises(SteinerInfeasibleError):
        spider_greedy(inst)
    with pytest.raises(SteinerInfeasibleError):
        exact_steiner_tree(inst)


def test_nwst_lp_path(p3):
    inst = SteinerInstance.build(p3, {0: 0, 1: 5, 2: 0}, [0, 2])
    result = solve_nwst_lp(inst)
    assert result.status == "optimal"
    assert result.value == 5
    assert result.x[1] == 1


def test_exact_tree_tie_break(c4):
    inst = SteinerInstance.build(c4, terminal_weights(c4, {0, 2}), {0, 2})
    solution = exact_steiner_tree(inst)
    assert solution.nodes == {0, 1, 2}
    assert solution.weight == 1


def test_exact_tree_budget():
    G = path_graph(8)
    inst = SteinerInstance.build(G, terminal_weights(G, {0, 7}), {0, 7})
    with pytest.raises(ResourceLimitError):
        exact_steiner_tree(inst)
    assert exact_steiner_tree(inst, max_vertices=8).weight == 6


def test_harmonic_number():
    assert harmonic_number(0) == 0
    assert harmonic_number(1) == 1
    assert harmonic_number(3) == Fraction(11, 6)


def test_greedy_guarantee_on_star():
    G = star_graph(4)
    leaves = {1, 2, 3, 4}
    inst = SteinerInstance.build(G, terminal_weights(G, leaves), leaves)
    assert within_greedy_guarantee(inst, spider_greedy(inst))


@pytest.mark.slow
def test_greedy_against_exact_on_small_graphs():
    for index, G in enumerate(connected_graphs(6, min_n=3)):
        n = G.vertex_count
        terminals = {0, n // 2, n - 1}
        weights = random_weights(G, seed=index, low=0, high=4)
        inst = SteinerInstance.build(G, weights, terminals)
        greedy = spider_greedy(inst, certify=True)
        exact = exact_steiner_tree(inst)
        assert terminals <= greedy.nodes
        assert induced_is_connected(G, greedy.nodes)
        assert greedy.lp_value <= exact.weight <= greedy.weight
        assert greedy.weight <= 2 * harmonic_number(len(terminals)) * exact.weight
