"""
Primal-dual approximation for minimum-cost dominating set, with reverse-delete
and exact checkers for the certificates its analysis relies on.

Each iteration raises the duals of all undominated vertices uniformly until the
dual constraint of some vertex goes tight; every tight vertex joins X. Zero-cost
vertices are in X from the start. A reverse-delete pass then prunes X to Y.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Literal, Mapping, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from .exceptions import GraphInputError
from .graph import (
    Graph,
    NodeWeights,
    VertexSet,
    as_fraction,
    check_vertex_set,
    check_weights,
    closed_neighborhood,
    is_dominating,
    require_connected,
    sorted_members,
    weight_of,
)
from .lp_engine import CoveringLPModel, LPResult, solve_covering

logger = logging.getLogger(__name__)

ZERO = Fraction(0)

GraphFamily = Literal["planar", "bipartite_planar", "minor_free"]

# Edge-density constants c' with |E(H)| <= c'|V(H)| for every member H of the family.
DENSITY_CONSTANTS: Dict[str, Fraction] = {
    "planar": Fraction(3),
    "bipartite_planar": Fraction(2),
}


class IterationRecord(BaseModel):
    """One uniform raise: the undominated set A_i, the step and who went tight."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    active: VertexSet
    epsilon: Fraction
    newly_tight: Tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "active": list(sorted_members(self.active)),
            "epsilon": str(self.epsilon),
            "newly_tight": list(self.newly_tight),
        }


class PDTrace(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    seeds: Tuple[int, ...] = ()
    iterations: Tuple[IterationRecord, ...] = ()
    selection_order: Tuple[int, ...] = ()
    final_X: VertexSet = frozenset()

    def selected_before(self, i: int) -> VertexSet:
        """X_{i-1}: seeds plus every vertex made tight before iteration i (0-based)."""
        selected = set(self.seeds)
        for record in self.iterations[:i]:
            selected.update(record.newly_tight)
        return frozenset(selected)

    def to_json_dict(self) -> dict:
        return {
            "seeds": list(self.seeds),
            "iterations": [record.to_json_dict() for record in self.iterations],
            "selection_order": list(self.selection_order),
            "final_X": list(sorted_members(self.final_X)),
        }


class DualSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    y: Dict[int, Fraction]

    def load(self, G: Graph, v: int) -> Fraction:
        """Left-hand side of v's dual constraint: y(Γ⁺(v))."""
        return weight_of(self.y, closed_neighborhood(G, v))

    def is_feasible(self, G: Graph, cost: Mapping[int, Fraction]) -> bool:
        return all(self.y[v] >= 0 for v in G.vertices) and all(
            self.load(G, v) <= cost[v] for v in G.vertices
        )

    def value(self) -> Fraction:
        return sum(self.y.values(), ZERO)


class PrimalDualResult(NamedTuple):
    Y: VertexSet
    y: DualSolution
    trace: PDTrace


class CertificateReport(BaseModel):
    """Outcome of every exact check on a primal-dual run."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cost: Fraction
    dual_value: Fraction
    iterations: int
    dual_feasible: bool
    dual_feasible_every_iteration: bool
    tight: bool
    rearrangement_identity: bool
    gamma_bound: Fraction
    gamma_holds: bool
    worst_ratio: Fraction
    witness_holds: bool

    @property
    def ok(self) -> bool:
        return (
            self.dual_feasible
            and self.dual_feasible_every_iteration
            and self.tight
            and self.rearrangement_identity
            and self.gamma_holds
            and self.witness_holds
        )

    def failures(self) -> List[str]:
        checks = {
            "dual feasibility": self.dual_feasible,
            "dual feasibility during the run": self.dual_feasible_every_iteration,
            "tightness of Y": self.tight,
            "rearrangement identity": self.rearrangement_identity,
            "gamma bound": self.gamma_holds,
            "witness lemma": self.witness_holds,
        }
        return [name for name, passed in checks.items() if not passed]

    def to_json_dict(self) -> dict:
        return {
            "cost": str(self.cost),
            "dual_value": str(self.dual_value),
            "iterations": self.iterations,
            "dual_feasible": self.dual_feasible,
            "dual_feasible_every_iteration": self.dual_feasible_every_iteration,
            "tight": self.tight,
            "rearrangement_identity": self.rearrangement_identity,
            "gamma_bound": str(self.gamma_bound),
            "gamma_holds": self.gamma_holds,
            "worst_ratio": str(self.worst_ratio),
            "witness_holds": self.witness_holds,
            "ok": self.ok,
        }


def density_constant(family: GraphFamily, c_prime: Optional[Fraction] = None) -> Fraction:
    """
    Edge-density constant c' for a declared graph family.

    Planar and bipartite planar graphs use the fixed table; for an H-minor-free
    family the caller must supply the constant.
    """
    if family in DENSITY_CONSTANTS:
        return DENSITY_CONSTANTS[family]
    if family == "minor_free":
        if c_prime is None:
            raise GraphInputError("The minor-free family needs an explicit c_prime")
        c_prime = as_fraction(c_prime)
        if c_prime <= 0:
            raise GraphInputError(f"c_prime must be positive, got {c_prime}")
        return c_prime
    raise GraphInputError(f"Unknown graph family: {family}")


def gamma_constant(c_prime: Fraction) -> Fraction:
    """Per-iteration bound 1 + 4c' implied by the counting arguments."""
    return 1 + 4 * as_fraction(c_prime)


def primal_dual_ds(G: Graph, cost: Mapping[int, Fraction]) -> PrimalDualResult:
    """
    Run the primal-dual dominating set algorithm followed by reverse-delete.

    Args:
        G: Connected graph
        cost: Nonnegative rational cost per vertex

    Returns:
        PrimalDualResult(Y, y, trace): a minimal dominating set, a feasible dual
        under which every member of Y is tight, and the full iteration trace

    Raises:
        GraphInputError: If G is disconnected or costs are invalid
    """
    require_connected(G, "primal_dual_ds")
    cost = check_weights(G, cost, "cost")
    neighborhoods = {v: closed_neighborhood(G, v) for v in G.vertices}

    seeds = tuple(v for v in G.vertices if cost[v] == 0)
    X = set(seeds)
    order: List[int] = list(seeds)
    y: NodeWeights = {v: ZERO for v in G.vertices}
    load: NodeWeights = {v: ZERO for v in G.vertices}
    iterations: List[IterationRecord] = []

    while True:
        active = frozenset(v for v in G.vertices if not neighborhoods[v] & X)
        if not active:
            break
        rates = {v: len(neighborhoods[v] & active) for v in G.vertices if v not in X}
        rates = {v: r for v, r in rates.items() if r > 0}
        epsilon = min((cost[v] - load[v]) / r for v, r in rates.items())

        for a in active:
            y[a] += epsilon
        for v, r in rates.items():
            load[v] += epsilon * r
        newly_tight = tuple(sorted(v for v in rates if load[v] == cost[v]))

        X.update(newly_tight)
        order.extend(newly_tight)
        iterations.append(IterationRecord(active=active, epsilon=epsilon, newly_tight=newly_tight))
        logger.debug(f"Iteration {len(iterations)}: |A|={len(active)}, eps={epsilon}, tight={list(newly_tight)}")

    trace = PDTrace(
        seeds=seeds,
        iterations=tuple(iterations),
        selection_order=tuple(order),
        final_X=frozenset(X),
    )
    Y = reverse_delete(G, trace.final_X, trace.selection_order)
    logger.info(f"Primal-dual: {len(iterations)} iterations, |X|={len(X)}, |Y|={len(Y)}, cost {weight_of(cost, Y)}")
    return PrimalDualResult(Y=Y, y=DualSolution(y=y), trace=trace)


def reverse_delete(G: Graph, X: VertexSet, selection_order: Sequence[int]) -> VertexSet:
    """
    Drop vertices of X in reverse selection order while the rest still dominates.

    Raises:
        GraphInputError: If X does not dominate G or selection_order is not a
            permutation of X
    """
    X = check_vertex_set(G, X)
    if len(selection_order) != len(X) or set(selection_order) != X:
        raise GraphInputError("selection_order must be a permutation of X")
    if not is_dominating(G, X):
        raise GraphInputError("reverse_delete needs a dominating set")

    current = set(X)
    for v in reversed(selection_order):
        current.discard(v)
        if not is_dominating(G, current):
            current.add(v)
    return frozenset(current)


def _check_trace(G: Graph, trace: PDTrace, Y: VertexSet) -> None:
    seen: List[int] = list(trace.seeds)
    for i, record in enumerate(trace.iterations):
        if not record.active:
            raise GraphInputError(f"Iteration {i + 1} has an empty active set")
        if not record.newly_tight:
            raise GraphInputError(f"Iteration {i + 1} made no vertex tight")
        if record.epsilon < 0:
            raise GraphInputError(f"Iteration {i + 1} has negative epsilon")
        check_vertex_set(G, record.active)
        seen.extend(record.newly_tight)
    if tuple(seen) != tuple(trace.selection_order) or set(seen) != trace.final_X:
        raise GraphInputError("Trace selection order does not match its iterations")
    if not check_vertex_set(G, Y) <= trace.final_X:
        raise GraphInputError("Y is not a subset of the trace's final X")


def _gamma_ratios(G: Graph, trace: PDTrace, Y: VertexSet) -> List[Fraction]:
    ratios = []
    for i, record in enumerate(trace.iterations):
        W = Y - trace.selected_before(i)
        total = sum(len(W & closed_neighborhood(G, v)) for v in record.active)
        ratios.append(Fraction(total, len(record.active)))
    return ratios


def check_gamma_bound(G: Graph, trace: PDTrace, Y: VertexSet, c_prime: Fraction) -> Tuple[bool, Fraction]:
    """
    Check sum_{v in A_i} |W_i ∩ Γ⁺(v)| <= (1 + 4c')|A_i| for every iteration,
    where W_i = Y - X_{i-1}.

    Returns:
        (holds, worst_ratio); worst_ratio is 0 for a trace with no iterations

    Raises:
        GraphInputError: If the trace is inconsistent with G or Y
    """
    _check_trace(G, trace, Y)
    bound = gamma_constant(c_prime)
    ratios = _gamma_ratios(G, trace, Y)
    worst = max(ratios, default=ZERO)
    return worst <= bound, worst


def check_witness_lemma(G: Graph, trace: PDTrace, Y: VertexSet) -> bool:
    """
    True iff |W_i| <= |A_i| in every iteration and each w in W_i has a witness
    v in A_i with Γ⁺(v) ∩ (X_{i-1} ∪ Y) = {w}.

    A vertex determines the unique w it witnesses, so the witness map is injective
    whenever every w has one.
    """
    _check_trace(G, trace, Y)
    for i, record in enumerate(trace.iterations):
        before = trace.selected_before(i)
        W = Y - before
        if len(W) > len(record.active):
            logger.warning(f"Iteration {i + 1}: |W|={len(W)} exceeds |A|={len(record.active)}")
            return False
        selected = before | Y
        witnessed = set()
        for v in record.active:
            hits = closed_neighborhood(G, v) & selected
            if len(hits) == 1:
                witnessed |= hits
        missing = W - witnessed
        if missing:
            logger.warning(f"Iteration {i + 1}: no witness for {sorted_members(missing)}")
            return False
    return True


def _dual_feasible_during_run(G: Graph, cost: NodeWeights, trace: PDTrace) -> bool:
    y = {v: ZERO for v in G.vertices}
    for record in trace.iterations:
        for a in record.active:
            y[a] += record.epsilon
        if any(weight_of(y, closed_neighborhood(G, v)) > cost[v] for v in G.vertices):
            return False
    return True


def certify_run(
    G: Graph,
    cost: Mapping[int, Fraction],
    result: PrimalDualResult,
    c_prime: Fraction = DENSITY_CONSTANTS["planar"],
) -> CertificateReport:
    """
    Run every exact certificate check on a primal-dual result.

    Args:
        G: The graph the run was made on
        cost: The cost function of the run
        result: Output of primal_dual_ds
        c_prime: Edge-density constant for the gamma bound (planar default)

    Returns:
        CertificateReport; report.ok is the overall verdict
    """
    cost = check_weights(G, cost, "cost")
    Y, dual, trace = result
    _check_trace(G, trace, Y)

    tight = all(dual.load(G, v) == cost[v] for v in Y)
    cost_Y = weight_of(cost, Y)
    rearranged = sum((dual.y[v] * len(Y & closed_neighborhood(G, v)) for v in G.vertices), ZERO)
    gamma_holds, worst = check_gamma_bound(G, trace, Y, c_prime)

    report = CertificateReport(
        cost=cost_Y,
        dual_value=dual.value(),
        iterations=len(trace.iterations),
        dual_feasible=dual.is_feasible(G, cost),
        dual_feasible_every_iteration=_dual_feasible_during_run(G, cost, trace),
        tight=tight,
        rearrangement_identity=cost_Y == rearranged,
        gamma_bound=gamma_constant(c_prime),
        gamma_holds=gamma_holds,
        worst_ratio=worst,
        witness_holds=check_witness_lemma(G, trace, Y),
    )
    if not report.ok:
        logger.warning(f"Certificate checks failed: {', '.join(report.failures())}")
    return report


def solve_ds_lp(G: Graph, cost: Mapping[int, Fraction]) -> LPResult:
    """Exact optimum of minDS-LP; all n domination rows are explicit."""
    cost = check_weights(G, cost, "cost")
    rows = tuple(closed_neighborhood(G, v) for v in G.vertices)
    return solve_covering(CoveringLPModel(objective=cost, explicit_rows=rows))
