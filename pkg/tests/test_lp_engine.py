from fractions import Fraction

import pytest

from cdspack_core.cds_pipeline import solve_cds_lp
from cdspack_core.cuts import ViolatedConstraint
from cdspack_core.exceptions import GraphInputError, LPError, ResourceLimitError
from cdspack_core.lp_engine import (
    CoveringLPModel,
    default_round_cap,
    format_lp_dump,
    solve_covering,
    solve_packing_master,
)
from cdspack_core.primal_dual import solve_ds_lp
from conftest import unit


def test_packing_master_single_column(p3):
    weights, duals, value = solve_packing_master([frozenset({1})], unit(p3))
    assert weights == [1] and value == 1
    assert duals == {0: 0, 1: 1, 2: 0}


def test_packing_master_c5_arcs(c5):
    arcs = [frozenset({i, (i + 1) % 5, (i + 2) % 5}) for i in range(5)]
    weights, duals, value = solve_packing_master(arcs, unit(c5))
    assert value == Fraction(5, 3)
    assert weights == [Fraction(1, 3)] * 5
    assert sum(duals.values()) == Fraction(5, 3)


def test_packing_master_zero_bounds(p3):
    weights, _, value = solve_packing_master([frozenset({0, 1}), frozenset({1})], {v: 0 for v in p3.vertices})
    assert value == 0
    assert weights == [0, 0]


def test_packing_master_rejects_bad_input(p3):
    with pytest.raises(GraphInputError):
        solve_packing_master([], unit(p3))
    with pytest.raises(GraphInputError):
        solve_packing_master([frozenset()], unit(p3))
    with pytest.raises(GraphInputError):
        solve_packing_master([frozenset({7})], unit(p3))


def test_covering_min_ds_star(star, star_costs):
    result = solve_ds_lp(star, star_costs)
    assert result.status == "optimal"
    assert result.value == 2
    assert result.x[0] == 1


def test_covering_min_cds_p3(p3):
    result = solve_cds_lp(p3, unit(p3))
    assert result.value == 1
    assert result.x == {0: 0, 1: 1, 2: 0}


def test_covering_zero_costs(p3):
    result = solve_ds_lp(p3, {v: 0 for v in p3.vertices})
    assert result.status == "optimal" and result.value == 0


def test_covering_empty_row_is_infeasible():
    model = CoveringLPModel(objective={0: 1, 1: 1}, explicit_rows=(frozenset({0}), frozenset()))
    assert solve_covering(model).status == "infeasible"


def test_covering_objective_must_be_nonnegative():
    with pytest.raises(ValueError):
        CoveringLPModel(objective={0: -1})


def always_row_zero(x):
    return ViolatedConstraint(kind="domination", row=frozenset({0}), slack=Fraction(-1), vertex=0)


def test_covering_rejects_repeated_oracle_row():
    model = CoveringLPModel(objective={0: 1}, explicit_rows=(frozenset({0}),), row_oracle=always_row_zero)
    with pytest.raises(LPError):
        solve_covering(model)


def test_covering_round_cap():
    model = CoveringLPModel(objective={0: 1}, row_oracle=always_row_zero, max_rounds=0)
    with pytest.raises(ResourceLimitError):
        solve_covering(model)
    assert default_round_cap(3) == 80
    assert default_round_cap(30) == 10 * 2 ** 20


def test_covering_generates_rows_from_oracle():
    def oracle(x):
        if x[0] + x[1] < 1:
            return ViolatedConstraint(kind="separator", row=frozenset({0, 1}), slack=x[0] + x[1] - 1)
        return None

    result = solve_covering(CoveringLPModel(objective={0: 3, 1: 2}, row_oracle=oracle))
    assert result.generated_rows == 1
    assert result.value == 2
    assert result.x == {0: 0, 1: 1}


def test_format_lp_dump():
    result = solve_covering(CoveringLPModel(objective={0: 1, 1: 2}, explicit_rows=(frozenset({0, 1}),)))
    dump = format_lp_dump(result)
    assert dump.splitlines() == [
        "# status optimal",
        "# value 1",
        "# rows 1 (generated 0)",
        "row 0: x0 + x1 >= 1",
        "x0 = 1",
        "x1 = 0",
        "# rows with positive multiplier: 0",
    ]


def test_lp_result_json(p3):
    payload = solve_cds_lp(p3, unit(p3)).to_json_dict()
    assert payload["value"] == "1"
    assert payload["x"] == {"0": "0", "1": "1", "2": "0"}
