"""
Brute-force ground truth for small graphs.

Everything here enumerates subsets outright and fails loudly when the budget
would be exceeded.
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Literal, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from .config import ORACLE_HARD_MAX_VERTICES, get_settings
from .exceptions import GraphInputError, ResourceLimitError
from .graph import (
    Graph,
    VertexSet,
    boundary,
    check_vertex_set,
    check_weights,
    closed_neighborhood,
    is_connected_dominating,
    is_dominating,
    sorted_members,
    weight_of,
)
from .lp_engine import CoveringLPModel, LPResult, solve_covering, solve_packing_master
from .packing import Packing
from .steiner import SteinerInstance, exact_steiner_tree

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class OracleBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_vertices: int = 7
    max_sets: int = 200_000

    @field_validator("max_vertices")
    @classmethod
    def _hard_cap(cls, value: int) -> int:
        if not 0 <= value <= ORACLE_HARD_MAX_VERTICES:
            raise ValueError(f"max_vertices must be in 0..{ORACLE_HARD_MAX_VERTICES}, got {value}")
        return value

    @classmethod
    def from_settings(cls) -> "OracleBudget":
        settings = get_settings()
        return cls(max_vertices=settings.oracle_max_vertices, max_sets=settings.oracle_max_sets)

    def check(self, G: Graph) -> None:
        if G.vertex_count > self.max_vertices:
            raise ResourceLimitError(
                f"Oracle budget allows {self.max_vertices} vertices, graph has {G.vertex_count}"
            )
        if 2 ** G.vertex_count > self.max_sets:
            raise ResourceLimitError(f"Enumerating 2^{G.vertex_count} subsets exceeds max_sets={self.max_sets}")


class GapReport(BaseModel):
    """Integral optimum over LP optimum for minDS and minCDS."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ds_integral: Fraction
    ds_lp: Fraction
    cds_integral: Fraction
    cds_lp: Fraction

    @staticmethod
    def _ratio(integral: Fraction, lp: Fraction) -> Optional[Fraction]:
        if lp > 0:
            return integral / lp
        return Fraction(1) if integral == 0 else None

    @property
    def ds_gap(self) -> Optional[Fraction]:
        return self._ratio(self.ds_integral, self.ds_lp)

    @property
    def cds_gap(self) -> Optional[Fraction]:
        return self._ratio(self.cds_integral, self.cds_lp)

    def to_json_dict(self) -> dict:
        def text(value):
            return None if value is None else str(value)

        return {
            "ds": {"integral": str(self.ds_integral), "lp": str(self.ds_lp), "gap": text(self.ds_gap)},
            "cds": {"integral": str(self.cds_integral), "lp": str(self.cds_lp), "gap": text(self.cds_gap)},
        }


def _budget(budget: Optional[OracleBudget]) -> OracleBudget:
    return budget if budget is not None else OracleBudget.from_settings()


def _subsets(G: Graph, budget: OracleBudget) -> Iterator[VertexSet]:
    """Every subset of V by size, then lexicographically."""
    budget.check(G)
    for size in range(G.vertex_count + 1):
        for members in combinations(G.vertices, size):
            yield frozenset(members)


def enumerate_cds(G: Graph, budget: Optional[OracleBudget] = None) -> List[VertexSet]:
    """All connected dominating sets, ordered by size then sorted member list."""
    return [D for D in _subsets(G, _budget(budget)) if is_connected_dominating(G, D)]


def exact_min_cost_set(
    G: Graph,
    cost: Mapping[int, Fraction],
    kind: Literal["DS", "CDS"],
    budget: Optional[OracleBudget] = None,
) -> Tuple[VertexSet, Fraction]:
    """
    Minimum-cost dominating (kind="DS") or connected dominating (kind="CDS") set.

    Ties go to the lexicographically smallest sorted member list.

    Raises:
        GraphInputError: If no set of the requested kind exists
        ResourceLimitError: If the graph exceeds the budget
    """
    cost = check_weights(G, cost, "cost")
    if kind == "DS":
        accept = is_dominating
    elif kind == "CDS":
        accept = is_connected_dominating
    else:
        raise GraphInputError(f"Unknown kind: {kind}")

    best = None
    for D in _subsets(G, _budget(budget)):
        if accept(G, D):
            key = (weight_of(cost, D), sorted_members(D))
            if best is None or key < best:
                best = key
    if best is None:
        raise GraphInputError(f"Graph has no {kind}")
    value, members = best
    return frozenset(members), value


def exact_fractional_cds_packing(
    G: Graph, capacity: Mapping[int, Fraction], budget: Optional[OracleBudget] = None
) -> Tuple[Fraction, Packing]:
    """Maximum fractional CDS packing under the capacities, with every CDS as a column."""
    capacity = check_weights(G, capacity, "capacity")
    columns = enumerate_cds(G, budget)
    if not columns:
        return ZERO, Packing()
    master = solve_packing_master(columns, capacity)
    entries = tuple((D, weight) for D, weight in zip(columns, master.weights) if weight > 0)
    logger.info(f"Exact fractional CDS packing over {len(columns)} columns: {master.value}")
    return master.value, Packing(entries=entries)


def _dense_rows(
    G: Graph,
    which: str,
    terminals: Optional[VertexSet],
    budget: OracleBudget,
) -> List[VertexSet]:
    rows: List[VertexSet] = []
    seen = set()

    def add(row: VertexSet) -> None:
        if row not in seen:
            seen.add(row)
            rows.append(row)

    if which in ("minDS", "minCDS"):
        for v in G.vertices:
            add(closed_neighborhood(G, v))
    if which == "minDS":
        return rows

    everything = frozenset(G.vertices)
    for S in _subsets(G, budget):
        if not S:
            continue
        gamma = boundary(G, S)
        if which == "minCDS":
            member = bool(everything - S - gamma)
        else:
            member = bool(S & terminals) and bool(terminals - S)
        if member:
            add(gamma)
    return rows


def dense_lp_solve(
    G: Graph,
    which: Literal["minDS", "minCDS", "nwST"],
    cost: Mapping[int, Fraction],
    terminals: Optional[VertexSet] = None,
    budget: Optional[OracleBudget] = None,
) -> LPResult:
    """
    Solve one of the three covering LPs with every constraint written out.

    Raises:
        GraphInputError: On an unknown LP name or a nwST call with fewer than 2 terminals
        ResourceLimitError: If the graph exceeds the budget
    """
    if which not in ("minDS", "minCDS", "nwST"):
        raise GraphInputError(f"Unknown LP: {which}")
    cost = check_weights(G, cost, "cost")
    if which == "nwST":
        terminals = check_vertex_set(G, terminals or ())
        if len(terminals) < 2:
            raise GraphInputError("Dense nwST-LP needs at least 2 terminals")
    rows = _dense_rows(G, which, terminals, _budget(budget))
    logger.debug(f"Dense {which}-LP with {len(rows)} rows")
    return solve_covering(CoveringLPModel(objective=cost, explicit_rows=tuple(rows)))


def exact_steiner_value(inst: SteinerInstance, budget: Optional[OracleBudget] = None) -> Fraction:
    """Integral node-weighted Steiner optimum by enumeration."""
    return exact_steiner_tree(inst, _budget(budget).max_vertices).weight


def integrality_gaps(
    G: Graph, cost: Mapping[int, Fraction], budget: Optional[OracleBudget] = None
) -> GapReport:
    """Exact integral and LP optima of minDS and minCDS on a small connected graph."""
    budget = _budget(budget)
    cost = check_weights(G, cost, "cost")
    _, ds_integral = exact_min_cost_set(G, cost, "DS", budget)
    _, cds_integral = exact_min_cost_set(G, cost, "CDS", budget)
    return GapReport(
        ds_integral=ds_integral,
        ds_lp=dense_lp_solve(G, "minDS", cost, budget=budget).value,
        cds_integral=cds_integral,
        cds_lp=dense_lp_solve(G, "minCDS", cost, budget=budget).value,
    )
