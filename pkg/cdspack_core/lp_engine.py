"""
Exact-rational linear programming.

One simplex core solves packing LPs

    max sum(lambda)  s.t.  sum_{j: v in D_j} lambda_j <= b(v),  lambda >= 0,  b >= 0

starting from the all-slack basis, with Bland's rule for anti-cycling. Covering
LPs  min c.x  s.t. x(R) >= 1 for every row R  are solved through their dual,
which is exactly such a packing LP over the rows with bounds c; the covering
point is read off the optimal duals. Rows of the implicit families are added one
at a time by a separation oracle.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Literal, Mapping, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from .cuts import ViolatedConstraint
from .exceptions import GraphInputError, LPError, ResourceLimitError
from .graph import FractionalSolution, NodeWeights, VertexSet, as_fraction, sorted_members

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
MAX_PIVOTS = 200_000

RowOracle = Callable[[FractionalSolution], Optional[ViolatedConstraint]]


class MasterSolution(NamedTuple):
    """Optimal packing: column weights, one dual per bound, optimum value."""
    weights: List[Fraction]
    duals: NodeWeights
    value: Fraction


class CoveringLPModel(BaseModel):
    """min objective.x subject to x(row) >= 1 for explicit and oracle-generated rows."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    objective: Dict[int, Fraction]
    explicit_rows: Tuple[VertexSet, ...] = ()
    row_oracle: Optional[RowOracle] = None
    max_rounds: Optional[int] = None

    @field_validator("objective", mode="before")
    @classmethod
    def _exact_nonnegative(cls, value):
        normalised = {v: as_fraction(c) for v, c in dict(value).items()}
        negative = [v for v, c in normalised.items() if c < 0]
        if negative:
            raise ValueError(f"Objective must be nonnegative; negative at {sorted(negative)}")
        return normalised


class LPResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Dict[int, Fraction]
    value: Optional[Fraction]
    status: Literal["optimal", "infeasible", "unbounded"]
    generated_rows: int = 0
    rows: Tuple[VertexSet, ...] = ()
    row_duals: Tuple[Fraction, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else str(self.value),
            "x": {str(v): str(val) for v, val in sorted(self.x.items())},
            "generated_rows": self.generated_rows,
            "rows": len(self.rows),
        }


class _PackingTableau:
    """Dense simplex tableau for  max 1.lambda  s.t.  A lambda + s = b,  all >= 0."""

    def __init__(self, columns: Sequence[VertexSet], bounds: Mapping[int, Fraction]):
        self.keys = sorted(bounds)
        self.row_of = {v: i for i, v in enumerate(self.keys)}
        self.n_cols = len(columns)
        n_rows = len(self.keys)
        width = self.n_cols + n_rows

        self.rows: List[List[Fraction]] = []
        for i, v in enumerate(self.keys):
            row = [ZERO] * (width + 1)
            row[self.n_cols + i] = ONE
            row[-1] = bounds[v]
            self.rows.append(row)
        for j, column in enumerate(columns):
            for v in column:
                if v not in self.row_of:
                    raise GraphInputError(f"Column {j} uses vertex {v} which has no bound")
                self.rows[self.row_of[v]][j] = ONE
        # reduced costs c_B B^-1 A_j - c_j; the last entry is the objective value
        self.objective = [-ONE] * self.n_cols + [ZERO] * (n_rows + 1)
        self.basis = [self.n_cols + i for i in range(n_rows)]

    def _pivot(self, r: int, c: int) -> None:
        pivot_row = self.rows[r]
        pivot = pivot_row[c]
        if pivot != 1:
            self.rows[r] = pivot_row = [a / pivot for a in pivot_row]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                factor = row[c]
                self.rows[i] = [a - factor * p for a, p in zip(row, pivot_row)]
        factor = self.objective[c]
        if factor != 0:
            self.objective = [a - factor * p for a, p in zip(self.objective, pivot_row)]
        self.basis[r] = c

    def solve(self) -> bool:
        """Run Bland's rule to optimality. Returns False if unbounded."""
        for pivots in range(MAX_PIVOTS):
            entering = next((j for j, rc in enumerate(self.objective[:-1]) if rc < 0), None)
            if entering is None:
                logger.debug(f"Simplex optimal after {pivots} pivots")
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self._pivot(best[1], entering)
        raise ResourceLimitError(f"Simplex exceeded {MAX_PIVOTS} pivots")

    def primal(self) -> List[Fraction]:
        weights = [ZERO] * self.n_cols
        for i, var in enumerate(self.basis):
            if var < self.n_cols:
                weights[var] = self.rows[i][-1]
        return weights

    def duals(self) -> NodeWeights:
        return {v: self.objective[self.n_cols + i] for i, v in enumerate(self.keys)}


def _verify_packing_optimality(
    columns: Sequence[VertexSet],
    bounds: Mapping[int, Fraction],
    weights: Sequence[Fraction],
    duals: Mapping[int, Fraction],
    value: Fraction,
) -> None:
    """Exact primal/dual feasibility, strong duality and complementary slackness."""
    load = {v: ZERO for v in bounds}
    for column, weight in zip(columns, weights):
        if weight < 0:
            raise LPError(f"Negative column weight {weight}")
        for v in column:
            load[v] += weight
    for v, b in bounds.items():
        if load[v] > b:
            raise LPError(f"Packing row {v} overloaded: {load[v]} > {b}")
        if duals[v] < 0:
            raise LPError(f"Negative dual at {v}: {duals[v]}")
        if duals[v] > 0 and load[v] != b:
            raise LPError(f"Complementary slackness fails at row {v}")
    for j, column in enumerate(columns):
        covered = sum((duals[v] for v in column), ZERO)
        if covered < 1:
            raise LPError(f"Dual infeasible at column {j}: {covered} < 1")
        if weights[j] > 0 and covered != 1:
            raise LPError(f"Complementary slackness fails at column {j}")
    primal_value = sum(weights, ZERO)
    dual_value = sum((bounds[v] * duals[v] for v in bounds), ZERO)
    if not primal_value == dual_value == value:
        raise LPError(f"Strong duality fails: primal {primal_value}, dual {dual_value}")


def _solve_packing(columns: Sequence[VertexSet], bounds: Mapping[int, Fraction]) -> Optional[MasterSolution]:
    tableau = _PackingTableau(columns, bounds)
    if not tableau.solve():
        return None
    weights = tableau.primal()
    duals = tableau.duals()
    value = tableau.objective[-1]
    _verify_packing_optimality(columns, bounds, weights, duals, value)
    return MasterSolution(weights=weights, duals=duals, value=value)


def solve_packing_master(columns: Sequence[VertexSet], bounds: Mapping[int, Fraction]) -> MasterSolution:
    """
    Solve  max sum(lambda)  s.t.  per-vertex load <= bounds(v),  lambda >= 0.

    Args:
        columns: Vertex sets (one variable each), nonempty list
        bounds: Nonnegative rational bound per vertex

    Returns:
        MasterSolution(weights, duals, value), certified optimal by exact
        strong duality and complementary slackness

    Raises:
        GraphInputError: If columns is empty, a bound is negative, or a column
            is empty (which would make the packing unbounded)
    """
    if not columns:
        raise GraphInputError("solve_packing_master needs at least one column")
    bounds = {v: as_fraction(b) for v, b in bounds.items()}
    if any(b < 0 for b in bounds.values()):
        raise GraphInputError("Packing bounds must be nonnegative")
    if any(not column for column in columns):
        raise GraphInputError("Empty columns make the packing LP unbounded")
    solution = _solve_packing(list(columns), bounds)
    logger.debug(f"Packing master over {len(columns)} columns: value {solution.value}")
    return solution


def default_round_cap(n: int) -> int:
    return 10 * 2 ** min(n, 20)


def solve_covering(model: CoveringLPModel) -> LPResult:
    """
    Exact optimum of a covering LP with row generation.

    Each round solves the dual packing LP over the current rows, reads the
    covering point from its duals and asks the oracle for one violated row.

    Args:
        model: Costs, explicit rows and an optional separation oracle

    Returns:
        LPResult with status "optimal" (oracle satisfied, optimal on the
        generated rows) or "infeasible" (an empty row can never be covered)

    Raises:
        ResourceLimitError: If more than max_rounds rows are generated
        LPError: If the oracle returns a row that is already present
    """
    objective = model.objective
    variables = sorted(objective)
    cap = model.max_rounds if model.max_rounds is not None else default_round_cap(len(variables))

    rows: List[VertexSet] = []
    for row in model.explicit_rows:
        row = frozenset(row)
        if row not in rows:
            rows.append(row)
    generated = 0

    while True:
        if any(not row for row in rows):
            logger.info("Covering LP has an empty row; infeasible")
            return LPResult(x={v: ZERO for v in variables}, value=None, status="infeasible",
                            generated_rows=generated, rows=tuple(rows))
        if rows:
            master = _solve_packing(rows, objective)
            x = dict(master.duals)
            value = master.value
            row_duals = tuple(master.weights)
        else:
            x = {v: ZERO for v in variables}
            value = ZERO
            row_duals = ()

        violated = model.row_oracle(x) if model.row_oracle is not None else None
        if violated is None:
            logger.debug(f"Covering LP optimal: value {value}, {len(rows)} rows, {generated} generated")
            return LPResult(x=x, value=value, status="optimal", generated_rows=generated,
                            rows=tuple(rows), row_duals=row_duals)

        if violated.row in rows:
            raise LPError(f"Oracle returned a row already in the model: {violated.describe()}")
        if generated >= cap:
            raise ResourceLimitError(f"Row generation exceeded {cap} rounds")
        logger.debug(f"Adding {violated.describe()}")
        rows.append(violated.row)
        generated += 1


def format_lp_dump(result: LPResult) -> str:
    """Text dump: one row per line, then the point and the basic rows, rationals as p/q."""
    lines = [f"# status {result.status}", f"# value {result.value}",
             f"# rows {len(result.rows)} (generated {result.generated_rows})"]
    for i, row in enumerate(result.rows):
        terms = " + ".join(f"x{v}" for v in sorted_members(row)) or "0"
        lines.append(f"row {i}: {terms} >= 1")
    for v, value in sorted(result.x.items()):
        lines.append(f"x{v} = {value}")
    basic = [str(i) for i, dual in enumerate(result.row_duals) if dual != 0]
    lines.append(f"# rows with positive multiplier: {' '.join(basic) or '-'}")
    return "\n".join(lines) + "\n"
