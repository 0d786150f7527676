"""
Fractional connected domatic packings.

carr_vempala_decompose writes a feasible minCDS-LP point x as a distribution over
connected dominating sets whose marginals are at most rho·x. The master LP packs
columns under the bounds rho·x; pricing rounds the master duals with round_cds.
pack_capacitated applies it to x = capacity/k and rescales by k/rho.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from .cds_pipeline import round_cds
from .config import get_settings
from .cuts import min_capacity_separator, separate_cds_lp
from .exceptions import CDSPackError, CompleteGraphError, GraphInputError, InfeasiblePointError, ResourceLimitError
from .graph import (
    Graph,
    NodeWeights,
    VertexSet,
    check_weights,
    is_connected_dominating,
    require_connected,
    sorted_members,
    weight_of,
)
from .lp_engine import solve_packing_master

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class Packing(BaseModel):
    """Weighted vertex sets (D_i, alpha_i) with alpha_i > 0."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: Tuple[Tuple[VertexSet, Fraction], ...] = ()

    @field_validator("entries")
    @classmethod
    def _positive_weights(cls, value):
        for members, weight in value:
            if weight <= 0:
                raise ValueError(f"Entry {sorted_members(members)} has non-positive weight {weight}")
        return value

    @property
    def size(self) -> Fraction:
        return sum((weight for _, weight in self.entries), ZERO)

    def marginal(self, v: int) -> Fraction:
        return sum((weight for members, weight in self.entries if v in members), ZERO)

    def marginals(self, G: Graph) -> NodeWeights:
        load = {v: ZERO for v in G.vertices}
        for members, weight in self.entries:
            for v in members:
                load[v] += weight
        return load

    def scaled(self, factor: Fraction) -> "Packing":
        return Packing(entries=tuple((members, weight * factor) for members, weight in self.entries))


class DecompositionResult(BaseModel):
    """
    distribution has size exactly 1 and marginal(v) <= rho·x(v) everywhere.
    rho_bound is the doubling parameter the master LP ended with.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    distribution: Packing
    rho: Fraction
    rho_bound: Fraction
    pricing_rounds: int


class CapacitatedPacking(NamedTuple):
    packing: Packing
    k: Fraction
    rho: Fraction


class PackingReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    size: Fraction
    invalid_entries: Tuple[int, ...] = ()
    non_cds_entries: Tuple[int, ...] = ()
    overloaded: Tuple[int, ...] = ()
    worst_slack: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return not self.invalid_entries and not self.non_cds_entries and not self.overloaded

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "size": str(self.size),
            "invalid_entries": list(self.invalid_entries),
            "non_cds_entries": list(self.non_cds_entries),
            "overloaded": list(self.overloaded),
            "worst_slack": None if self.worst_slack is None else str(self.worst_slack),
        }


def _require_feasible(G: Graph, x: NodeWeights) -> None:
    violated = separate_cds_lp(G, x)
    if violated is not None:
        raise InfeasiblePointError(f"x is not feasible for minCDS-LP: {violated.describe()}", violated)


def carr_vempala_decompose(
    G: Graph,
    x: Mapping[int, Fraction],
    max_rounds: Optional[int] = None,
    rho_cap: Optional[Fraction] = None,
) -> DecompositionResult:
    """
    Decompose a feasible minCDS-LP point into a distribution over CDSs.

    The column pool starts empty. Each round prices with the current master
    duals (all zero before the first master solve); a priced CDS of dual cost
    below 1 joins the pool, otherwise the bound multiplier rho doubles. The loop
    stops once the master optimum reaches 1.

    Args:
        G: Connected graph
        x: Point feasible for minCDS-LP
        max_rounds: Cap on master/pricing rounds (CDSPACK_DECOMPOSE_MAX_ROUNDS)
        rho_cap: Optional upper limit on the doubling parameter

    Returns:
        DecompositionResult with weights summing to exactly 1

    Raises:
        InfeasiblePointError: If x is infeasible
        ResourceLimitError: If the round cap or rho_cap is exceeded
    """
    require_connected(G, "carr_vempala_decompose")
    x = check_weights(G, x, "x")
    _require_feasible(G, x)
    if max_rounds is None:
        max_rounds = get_settings().decompose_max_rounds

    rho = Fraction(1)
    pool: List[VertexSet] = []
    duals: NodeWeights = {v: ZERO for v in G.vertices}
    master = None
    pricing_rounds = 0

    for round_number in range(1, max_rounds + 1):
        column = round_cds(G, duals, x, check_feasibility=False).cds
        if weight_of(duals, column) < 1 and column not in pool:
            pool.append(column)
            pricing_rounds += 1
            logger.debug(f"Round {round_number}: new column {sorted_members(column)}")
        else:
            rho *= 2
            if rho_cap is not None and rho > rho_cap:
                raise ResourceLimitError(f"rho would exceed the cap {rho_cap}")
            logger.debug(f"Round {round_number}: pricing stalled, rho -> {rho}")

        master = solve_packing_master(pool, {v: rho * x[v] for v in G.vertices})
        duals = master.duals
        if master.value >= 1:
            break
    else:
        raise ResourceLimitError(f"Decomposition did not converge in {max_rounds} rounds")

    value = master.value
    entries = tuple((column, weight / value) for column, weight in zip(pool, master.weights) if weight > 0)
    result = DecompositionResult(
        distribution=Packing(entries=entries),
        rho=rho / value,
        rho_bound=rho,
        pricing_rounds=pricing_rounds,
    )
    logger.info(
        f"Decomposition: {len(entries)} sets, rho {result.rho} (doubling bound {rho}), "
        f"{len(pool)} columns in {round_number} rounds"
    )
    return result


def pack_capacitated(
    G: Graph,
    capacity: Mapping[int, Fraction],
    max_rounds: Optional[int] = None,
    rho_cap: Optional[Fraction] = None,
    uniform_shortcut: bool = False,
    max_workers: int = 1,
) -> CapacitatedPacking:
    """
    Fractional connected domatic packing of size k/rho respecting the capacities.

    Args:
        G: Connected, non-complete graph
        capacity: Positive rational capacity per vertex
        max_rounds, rho_cap: Passed to carr_vempala_decompose
        uniform_shortcut, max_workers: Passed to min_capacity_separator

    Returns:
        CapacitatedPacking(packing, k, rho)

    Raises:
        CompleteGraphError: If G is complete (see pack_complete)
        GraphInputError: On a disconnected graph or a non-positive capacity
    """
    require_connected(G, "pack_capacitated")
    capacity = check_weights(G, capacity, "capacity")
    if any(c <= 0 for c in capacity.values()):
        raise GraphInputError("pack_capacitated needs positive capacities")
    if G.is_complete():
        raise CompleteGraphError()

    k = min_capacity_separator(G, capacity, uniform_shortcut=uniform_shortcut, max_workers=max_workers).capacity
    x = {v: capacity[v] / k for v in G.vertices}
    if separate_cds_lp(G, x) is not None:
        raise CDSPackError("capacity/k is not feasible for minCDS-LP")

    decomposition = carr_vempala_decompose(G, x, max_rounds=max_rounds, rho_cap=rho_cap)
    rho = decomposition.rho
    packing = decomposition.distribution.scaled(k / rho)
    logger.info(f"Packed size {packing.size} with k={k}, rho={rho}")
    return CapacitatedPacking(packing=packing, k=k, rho=rho)


def pack_complete(G: Graph, capacity: Mapping[int, Fraction]) -> Packing:
    """
    Complete graphs only: every vertex alone is a CDS, packed at its full capacity.
    """
    if not G.is_complete() or G.vertex_count == 0:
        raise GraphInputError("pack_complete only applies to nonempty complete graphs")
    capacity = check_weights(G, capacity, "capacity")
    return Packing(entries=tuple((frozenset([v]), capacity[v]) for v in G.vertices if capacity[v] > 0))


def verify_packing(G: Graph, capacity: Mapping[int, Fraction], p: Packing) -> PackingReport:
    """
    Check every set is a CDS and every marginal fits within capacity, exactly.

    Entries naming a vertex outside 0..n-1 are reported in invalid_entries and
    left out of the CDS and marginal checks.
    """
    capacity = check_weights(G, capacity, "capacity")
    in_range = [all(0 <= v < G.vertex_count for v in members) for members, _ in p.entries]
    invalid = tuple(i for i, ok in enumerate(in_range) if not ok)
    valid = [(i, entry) for i, entry in enumerate(p.entries) if in_range[i]]
    non_cds = tuple(i for i, (members, _) in valid if not is_connected_dominating(G, members))
    marginals = Packing(entries=tuple(entry for _, entry in valid)).marginals(G)
    overloaded = tuple(v for v in G.vertices if marginals[v] > capacity[v])
    slack = min((capacity[v] - marginals[v] for v in G.vertices), default=None)
    report = PackingReport(
        size=p.size,
        invalid_entries=invalid,
        non_cds_entries=non_cds,
        overloaded=overloaded,
        worst_slack=slack,
    )
    if not report.ok:
        logger.warning(
            f"Packing check failed: invalid entries {list(invalid)}, "
            f"non-CDS entries {list(non_cds)}, overloaded {list(overloaded)}"
        )
    return report


def packing_to_json(packing: Packing, k: Optional[Fraction] = None, rho: Optional[Fraction] = None) -> Dict:
    """{"sets", "weights", "k", "rho", "size"} with rationals as strings."""
    return {
        "sets": [list(sorted_members(members)) for members, _ in packing.entries],
        "weights": [str(weight) for _, weight in packing.entries],
        "k": None if k is None else str(k),
        "rho": None if rho is None else str(rho),
        "size": str(packing.size),
    }
