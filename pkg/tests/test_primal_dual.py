from fractions import Fraction

import pytest

from cdspack_core.exceptions import GraphInputError
from cdspack_core.generators import grid_graph, random_weights
from cdspack_core.graph import is_dominating, weight_of
from cdspack_core.primal_dual import (
    PDTrace,
    certify_run,
    check_gamma_bound,
    check_witness_lemma,
    density_constant,
    gamma_constant,
    primal_dual_ds,
    reverse_delete,
    solve_ds_lp,
)
from conftest import connected_graphs, make_graph, unit


def test_p3_run(p3):
    Y, y, trace = primal_dual_ds(p3, unit(p3))
    assert Y == {1}
    assert len(trace.iterations) == 1
    first = trace.iterations[0]
    assert first.active == {0, 1, 2}
    assert first.epsilon == Fraction(1, 3)
    assert first.newly_tight == (1,)
    assert y.y == {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(1, 3)}
    assert trace.selection_order == (1,)


def test_star_run(star, star_costs):
    Y, y, trace = primal_dual_ds(star, star_costs)
    assert Y == {0}
    assert weight_of(star_costs, Y) == 2
    assert len(trace.iterations) == 1
    assert trace.iterations[0].epsilon == Fraction(1, 2)
    assert trace.iterations[0].newly_tight == (0, 1, 2, 3)
    assert all(value == Fraction(1, 2) for value in y.y.values())


def test_zero_costs_seed_everything(p3):
    Y, y, trace = primal_dual_ds(p3, {v: 0 for v in p3.vertices})
    assert trace.seeds == (0, 1, 2)
    assert trace.iterations == ()
    assert Y == {1}
    assert y.value() == 0


def test_disconnected_graph_rejected():
    G = make_graph(3, [(0, 1)])
    with pytest.raises(GraphInputError):
        primal_dual_ds(G, unit(G))


def test_reverse_delete(p3, star):
    assert reverse_delete(star, frozenset(star.vertices), [0, 1, 2, 3]) == {0}
    assert reverse_delete(p3, frozenset({1}), [1]) == {1}
    assert reverse_delete(p3, frozenset({0, 1}), [0, 1]) == {1}
    with pytest.raises(GraphInputError):
        reverse_delete(p3, frozenset({0}), [0])
    with pytest.raises(GraphInputError):
        reverse_delete(p3, frozenset({0, 1}), [1])


def test_gamma_bound_examples(p3, star, star_costs):
    Y, _, trace = primal_dual_ds(p3, unit(p3))
    assert check_gamma_bound(p3, trace, Y, Fraction(3)) == (True, Fraction(1))

    Y, _, trace = primal_dual_ds(star, star_costs)
    assert check_gamma_bound(star, trace, Y, Fraction(3)) == (True, Fraction(1))


def test_gamma_bound_rejects_inconsistent_trace(p3):
    Y, _, trace = primal_dual_ds(p3, unit(p3))
    broken = PDTrace(seeds=(), iterations=trace.iterations, selection_order=(0,), final_X=frozenset({0}))
    with pytest.raises(GraphInputError):
        check_gamma_bound(p3, broken, frozenset({0}), Fraction(3))


def test_witness_lemma_examples(p3, star, star_costs):
    Y, _, trace = primal_dual_ds(p3, unit(p3))
    assert check_witness_lemma(p3, trace, Y)
    Y, _, trace = primal_dual_ds(star, star_costs)
    assert check_witness_lemma(star, trace, Y)


def test_certify_run(p3, star, star_costs):
    for G, cost in ((p3, unit(p3)), (star, star_costs)):
        report = certify_run(G, cost, primal_dual_ds(G, cost))
        assert report.ok
        assert report.failures() == []
        assert report.gamma_bound == 13
        assert report.to_json_dict()["ok"] is True


def test_density_constants():
    assert density_constant("planar") == 3
    assert density_constant("bipartite_planar") == 2
    assert density_constant("minor_free", Fraction(7, 2)) == Fraction(7, 2)
    assert gamma_constant(Fraction(3)) == 13
    with pytest.raises(GraphInputError):
        density_constant("minor_free")


def test_cost_scaling_invariance(c5):
    cost = random_weights(c5, seed=3)
    Y, y, _ = primal_dual_ds(c5, cost)
    Y3, y3, _ = primal_dual_ds(c5, {v: 3 * c for v, c in cost.items()})
    assert Y3 == Y
    assert y3.y == {v: 3 * value for v, value in y.y.items()}


def test_trace_json(p3):
    payload = primal_dual_ds(p3, unit(p3)).trace.to_json_dict()
    assert payload["iterations"] == [{"active": [0, 1, 2], "epsilon": "1/3", "newly_tight": [1]}]


@pytest.mark.slow
def test_certificates_on_all_small_graphs():
    for index, G in enumerate(connected_graphs(6)):
        for cost in (unit(G), random_weights(G, seed=index)):
            result = primal_dual_ds(G, cost)
            report = certify_run(G, cost, result)
            assert report.dual_feasible and report.dual_feasible_every_iteration
            assert report.tight and report.rearrangement_identity and report.witness_holds
            assert is_dominating(G, result.Y)
            assert len(result.trace.iterations) <= G.vertex_count
            assert report.cost >= solve_ds_lp(G, cost).value


@pytest.mark.slow
def test_planar_grids_within_gamma_bound():
    for rows in range(2, 7):
        for cols in range(rows, 7):
            G = grid_graph(rows, cols)
            for cost in (unit(G), random_weights(G, seed=rows * 10 + cols)):
                report = certify_run(G, cost, primal_dual_ds(G, cost), density_constant("planar"))
                assert report.ok
                assert report.cost <= 13 * solve_ds_lp(G, cost).value
