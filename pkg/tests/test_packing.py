from fractions import Fraction

import pytest

from cdspack_core.exceptions import CompleteGraphError, GraphInputError, InfeasiblePointError, ResourceLimitError
from cdspack_core.generators import grid_graph, random_weights
from cdspack_core.oracles import exact_fractional_cds_packing
from cdspack_core.packing import (
    Packing,
    carr_vempala_decompose,
    pack_capacitated,
    pack_complete,
    packing_to_json,
    verify_packing,
)
from conftest import connected_graphs, unit

HALF = Fraction(1, 2)


def sets(packing):
    return [(set(members), weight) for members, weight in packing.entries]


def test_packing_model():
    p = Packing(entries=((frozenset({0, 1}), HALF), (frozenset({1}), Fraction(1, 4))))
    assert p.size == Fraction(3, 4)
    assert p.marginal(1) == Fraction(3, 4)
    assert p.marginal(2) == 0
    assert sets(p.scaled(Fraction(2))) == [({0, 1}, 1), ({1}, HALF)]
    with pytest.raises(ValueError):
        Packing(entries=((frozenset({0}), Fraction(0)),))


def test_decompose_single_set(p3, star):
    result = carr_vempala_decompose(p3, {0: 0, 1: 1, 2: 0})
    assert sets(result.distribution) == [({1}, 1)]
    assert result.rho == 1

    result = carr_vempala_decompose(star, {0: 1, 1: 0, 2: 0, 3: 0})
    assert sets(result.distribution) == [({0}, 1)]
    assert result.rho == 1


def test_decompose_cycle(c4):
    result = carr_vempala_decompose(c4, {v: HALF for v in c4.vertices})
    assert result.distribution.size == 1
    assert sets(result.distribution) == [({1, 2}, HALF), ({0, 3}, HALF)]
    assert result.rho == 1
    assert result.rho_bound == 1
    assert result.pricing_rounds == 4


def test_decompose_prices_until_covered(p4):
    result = carr_vempala_decompose(p4, {0: 0, 1: 1, 2: 1, 3: 0})
    assert sets(result.distribution) == [({1, 2}, 1)]
    assert result.pricing_rounds == 2


def test_decompose_rejects_infeasible_point(p3):
    with pytest.raises(InfeasiblePointError):
        carr_vempala_decompose(p3, {0: 1, 1: 0, 2: 1})


def test_decompose_round_cap(c4):
    with pytest.raises(ResourceLimitError):
        carr_vempala_decompose(c4, {v: HALF for v in c4.vertices}, max_rounds=1)


def test_pack_path(p3):
    packing, k, rho = pack_capacitated(p3, unit(p3))
    assert k == 1
    assert rho == 1
    assert sets(packing) == [({1}, 1)]
    assert packing.size == 1


def test_pack_star_capacities(star):
    packing, k, rho = pack_capacitated(star, {0: 5, 1: 1, 2: 1, 3: 1})
    assert k == 5
    assert sets(packing) == [({0}, 5)]
    assert packing.size == 5


def test_pack_cycle(c5):
    capacity = unit(c5)
    packing, k, rho = pack_capacitated(c5, capacity)
    assert k == 2
    assert verify_packing(c5, capacity, packing).ok
    assert packing.size == k / rho
    assert packing.size <= Fraction(5, 3)
    assert rho >= Fraction(6, 5)


def test_pack_rejects(k4, p3):
    with pytest.raises(CompleteGraphError):
        pack_capacitated(k4, unit(k4))
    with pytest.raises(GraphInputError):
        pack_capacitated(p3, {0: 1, 1: 0, 2: 1})


def test_pack_complete(k3, p3):
    packing = pack_complete(k3, {0: 1, 1: 2, 2: 0})
    assert sets(packing) == [({0}, 1), ({1}, 2)]
    with pytest.raises(GraphInputError):
        pack_complete(p3, unit(p3))


def test_verify_packing(p3):
    report = verify_packing(p3, unit(p3), Packing(entries=((frozenset({0}), Fraction(1)),)))
    assert report.non_cds_entries == (0,)
    assert not report.ok

    report = verify_packing(p3, unit(p3), Packing(entries=((frozenset({1}), Fraction(2)),)))
    assert report.overloaded == (1,)
    assert report.worst_slack == -1
    assert report.to_json_dict()["ok"] is False


def test_verify_packing_reports_unknown_vertices(p3):
    p = Packing(entries=((frozenset({0, 7}), Fraction(1)), (frozenset({1}), Fraction(1))))
    report = verify_packing(p3, unit(p3), p)
    assert report.invalid_entries == (0,)
    assert report.non_cds_entries == ()
    assert report.overloaded == ()
    assert not report.ok
    assert report.to_json_dict()["invalid_entries"] == [0]


def test_pack_scales_with_capacity():
    G = grid_graph(2, 3)
    capacity = random_weights(G, seed=1)
    packing, k, rho = pack_capacitated(G, capacity)
    scaled, k3, rho3 = pack_capacitated(G, {v: 3 * c for v, c in capacity.items()})
    assert k3 == 3 * k
    assert rho3 == rho
    assert scaled.size == 3 * packing.size
    assert verify_packing(G, {v: 3 * c for v, c in capacity.items()}, scaled).ok

def test_packing_json(p3):
    packing, k, rho = pack_capacitated(p3, unit(p3))
    assert packing_to_json(packing, k, rho) == {
        "sets": [[1]],
        "weights": ["1"],
        "k": "1",
        "rho": "1",
        "size": "1",
    }
    assert packing_to_json(Packing())["size"] == "0"


@pytest.mark.slow
def test_packing_against_exact_on_small_graphs():
    for index, G in enumerate(connected_graphs(6, min_n=3)):
        if G.is_complete():
            continue
        for capacity in (unit(G), random_weights(G, seed=index)):
            packing, k, rho = pack_capacitated(G, capacity)
            exact, _ = exact_fractional_cds_packing(G, capacity)
            assert verify_packing(G, capacity, packing).ok
            assert packing.size == k / rho
            assert rho >= 1
            assert packing.size <= exact <= k

