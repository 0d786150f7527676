"""
Rounding a feasible minCDS-LP point to a connected dominating set.

A dominating set D comes from the primal-dual algorithm (or, for general graphs,
from randomized rounding); D is then connected with the spider greedy on the
Steiner instance whose terminals are D, with weight 0 on D and cost elsewhere.
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from .cuts import separate_cds_lp
from .exceptions import CDSPackError, GraphInputError, InfeasiblePointError, ResourceLimitError
from .graph import (
    FractionalSolution,
    Graph,
    NodeWeights,
    Rational,
    VertexSet,
    as_fraction,
    check_vertex_set,
    check_weights,
    closed_neighborhood,
    induced_is_connected,
    is_connected_dominating,
    is_dominating,
    require_connected,
    sorted_members,
    weight_of,
)
from .lp_engine import CoveringLPModel, LPResult, solve_covering
from .primal_dual import primal_dual_ds
from .steiner import SteinerInstance, spider_greedy

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class CDSRounding(BaseModel):
    """A connected dominating set built as ds_part plus connector_part."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cds: VertexSet
    ds_part: VertexSet
    connector_part: VertexSet
    cost: Fraction
    fractional_value: Fraction
    certified_r: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        return {
            "cds": list(sorted_members(self.cds)),
            "ds_part": list(sorted_members(self.ds_part)),
            "connector_part": list(sorted_members(self.connector_part)),
            "cost": str(self.cost),
            "fractional_value": str(self.fractional_value),
            "certified_r": None if self.certified_r is None else str(self.certified_r),
        }


def solve_cds_lp(G: Graph, cost: Mapping[int, Fraction], max_rounds: Optional[int] = None) -> LPResult:
    """
    Exact optimum of minCDS-LP.

    Domination rows are explicit; separator rows are generated one at a time
    by separate_cds_lp.

    Raises:
        GraphInputError: If G is disconnected or has fewer than 2 vertices
    """
    require_connected(G, "solve_cds_lp")
    if G.vertex_count < 2:
        raise GraphInputError("solve_cds_lp needs at least 2 vertices")
    cost = check_weights(G, cost, "cost")
    model = CoveringLPModel(
        objective=cost,
        explicit_rows=tuple(closed_neighborhood(G, v) for v in G.vertices),
        row_oracle=lambda x: separate_cds_lp(G, x),
        max_rounds=max_rounds,
    )
    result = solve_covering(model)
    logger.info(f"minCDS-LP: value {result.value} after {result.generated_rows} generated rows")
    return result


def extend_for_steiner(G: Graph, x: Mapping[int, Fraction], terminals: Iterable[int]) -> FractionalSolution:
    """x'(v) = x(v) off the terminals and 1 on them."""
    x = check_weights(G, x, "x")
    terminals = check_vertex_set(G, terminals)
    return {v: Fraction(1) if v in terminals else x[v] for v in G.vertices}


def _connect(G: Graph, cost: NodeWeights, D: VertexSet) -> VertexSet:
    if induced_is_connected(G, D):
        return frozenset()
    weights = {v: ZERO if v in D else cost[v] for v in G.vertices}
    solution = spider_greedy(SteinerInstance.build(G, weights, D))
    return solution.nodes - D


def _rounding(G: Graph, cost: NodeWeights, x: NodeWeights, D: VertexSet, connector: VertexSet) -> CDSRounding:
    cds = D | connector
    if not is_connected_dominating(G, cds):
        raise CDSPackError(f"Rounding produced {sorted_members(cds)}, which is not a connected dominating set")
    total = weight_of(cost, cds)
    fractional = sum((x[v] * cost[v] for v in G.vertices), ZERO)
    return CDSRounding(
        cds=cds,
        ds_part=D,
        connector_part=connector,
        cost=total,
        fractional_value=fractional,
        certified_r=total / fractional if fractional > 0 else None,
    )


def round_cds(
    G: Graph,
    cost: Mapping[int, Fraction],
    x: Mapping[int, Fraction],
    check_feasibility: bool = True,
) -> CDSRounding:
    """
    Round a feasible minCDS-LP point to a connected dominating set.

    Args:
        G: Connected graph
        cost: Nonnegative rational costs
        x: Point that must be feasible for minCDS-LP
        check_feasibility: Verify x with the separation oracle first; callers
            that already verified x (the decomposition loop) pass False

    Returns:
        CDSRounding whose cds is always a connected dominating set

    Raises:
        InfeasiblePointError: If x violates a constraint (carried on .constraint)
    """
    require_connected(G, "round_cds")
    cost = check_weights(G, cost, "cost")
    x = check_weights(G, x, "x")
    if check_feasibility:
        violated = separate_cds_lp(G, x)
        if violated is not None:
            raise InfeasiblePointError(f"x is not feasible for minCDS-LP: {violated.describe()}", violated)

    D = primal_dual_ds(G, cost).Y
    connector = _connect(G, cost, D)
    rounding = _rounding(G, cost, x, D, connector)
    logger.debug(f"round_cds: D={sorted_members(D)}, connector={sorted_members(connector)}, cost {rounding.cost}")
    return rounding


def randomized_ds_round(G: Graph, x: Mapping[int, Fraction], c: Rational, seed: int) -> VertexSet:
    """
    Include each v independently with probability min(c·ln(n)·x(v), 1).

    ln(n) enters as the exact rational value of math.log(n), and the product is
    formed in Fractions, so p = 1 and p = 0 are decided exactly: such vertices are
    always in or always out. Only p strictly between 0 and 1 is converted to float.

    Seed contract: exactly n uniform draws are taken from numpy's
    default_rng(seed), one per vertex in id order, whatever the probabilities.
    The same (G, x, c, seed) always gives the same set. The set is not
    guaranteed to dominate.
    """
    x = check_weights(G, x, "x")
    c = as_fraction(c)
    if c <= 0:
        raise GraphInputError(f"c must be positive, got {c}")
    scale = c * Fraction(math.log(G.vertex_count)) if G.vertex_count > 1 else ZERO
    rng = np.random.default_rng(seed)
    draws = rng.random(G.vertex_count)
    chosen = []
    for v in G.vertices:
        p = scale * x[v]
        if p >= 1 or (p > 0 and draws[v] < float(p)):
            chosen.append(v)
    return frozenset(chosen)


def randomized_cds_round(
    G: Graph,
    cost: Mapping[int, Fraction],
    x: Mapping[int, Fraction],
    c: Rational = 2,
    seed: int = 0,
    max_attempts: int = 20,
) -> CDSRounding:
    """
    General-graph variant of round_cds: randomized DS rounding, retried with
    seeds seed, seed+1, ... until the sample dominates, then the Steiner connector.

    Raises:
        ResourceLimitError: If no sample dominates within max_attempts
    """
    require_connected(G, "randomized_cds_round")
    cost = check_weights(G, cost, "cost")
    x = check_weights(G, x, "x")
    for attempt in range(max_attempts):
        D = randomized_ds_round(G, x, c, seed + attempt)
        if is_dominating(G, D):
            logger.debug(f"Randomized rounding dominated on attempt {attempt + 1}")
            return _rounding(G, cost, x, D, _connect(G, cost, D))
    raise ResourceLimitError(f"Randomized rounding did not dominate in {max_attempts} attempts")
