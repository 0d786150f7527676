"""
Node-weighted Steiner tree: the exact nwST-LP by row generation and the greedy
spider-contraction heuristic used to connect a dominating set.
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from .cuts import separate_nwst_lp
from .exceptions import GraphInputError, ResourceLimitError, SteinerInfeasibleError
from .graph import (
    Graph,
    VertexSet,
    check_vertex_set,
    check_weights,
    connected_components,
    induced_is_connected,
    sorted_members,
    weight_of,
)
from .lp_engine import CoveringLPModel, LPResult, solve_covering

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class SteinerInstance(BaseModel):
    """Graph, node weights and terminal set of a node-weighted Steiner problem."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    weights: Dict[int, Fraction]
    terminals: VertexSet

    @classmethod
    def build(cls, G: Graph, weights: Mapping[int, Fraction], terminals: Iterable[int]) -> "SteinerInstance":
        """
        Validate and normalise an instance.

        Raises:
            GraphInputError: On an empty terminal set, unknown ids or negative weights
        """
        terminals = check_vertex_set(G, terminals)
        if not terminals:
            raise GraphInputError("A Steiner instance needs at least one terminal")
        return cls(graph=G, weights=check_weights(G, weights, "weights"), terminals=terminals)


class SteinerSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: VertexSet
    weight: Fraction
    certified_ratio: Optional[Fraction] = None
    lp_value: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        return {
            "nodes": list(sorted_members(self.nodes)),
            "weight": str(self.weight),
            "certified_ratio": None if self.certified_ratio is None else str(self.certified_ratio),
            "lp_value": None if self.lp_value is None else str(self.lp_value),
        }


def harmonic_number(m: int) -> Fraction:
    """H(m) = 1 + 1/2 + ... + 1/m, with H(0) = 0."""
    return sum((Fraction(1, i) for i in range(1, m + 1)), ZERO)


def _require_same_component(inst: SteinerInstance) -> None:
    G = inst.graph.to_networkx()
    anchor = min(inst.terminals)
    reachable = nx.node_connected_component(G, anchor)
    stranded = inst.terminals - reachable
    if stranded:
        raise SteinerInfeasibleError(
            f"Terminals {sorted_members(stranded)} are not connected to terminal {anchor}"
        )


def _best_spider(
    inst: SteinerInstance, selected: set, components: List[VertexSet]
) -> Tuple[Tuple, VertexSet]:
    """Cheapest spider by (weight / components merged, center, paths)."""
    residual = {v: ZERO if v in selected else inst.weights[v] for v in inst.graph.vertices}
    G = inst.graph.to_networkx()
    centers = sorted(nx.node_connected_component(G, min(inst.terminals)))

    best = None
    for center in centers:
        distances, paths = nx.single_source_dijkstra(G, center, weight=lambda u, v, _: residual[v])
        legs = []
        for comp in components:
            reached = [(distances[u], u) for u in comp if u in distances]
            if not reached:
                continue
            dist, contact = min(reached)
            legs.append((dist, min(comp), tuple(paths[contact])))
        legs.sort()

        total = residual[center]
        for j, (dist, _, _) in enumerate(legs, start=1):
            total += dist
            if j < 2:
                continue
            chosen = legs[:j]
            key = (total / j, center, tuple(tuple(sorted(path)) for _, _, path in chosen))
            if best is None or key < best[0]:
                nodes = frozenset(u for _, _, path in chosen for u in path)
                best = (key, nodes)
    return best


def spider_greedy(inst: SteinerInstance, certify: bool = False) -> SteinerSolution:
    """
    Greedy spider contraction for node-weighted Steiner tree.

    Already-selected vertices cost nothing; each round adds the spider with the
    smallest weight per merged component until the terminals are connected.

    Args:
        inst: The Steiner instance
        certify: Also solve the nwST-LP exactly and record weight / LP value

    Returns:
        SteinerSolution with a connected node set containing every terminal

    Raises:
        SteinerInfeasibleError: If some terminals lie in different components
    """
    _require_same_component(inst)
    selected = set(inst.terminals)
    rounds = 0
    while True:
        components = connected_components(inst.graph, selected)
        if len(components) <= 1:
            break
        key, nodes = _best_spider(inst, selected, components)
        rounds += 1
        logger.debug(f"Spider round {rounds}: center {key[1]}, ratio {key[0]}, adds {sorted_members(nodes - selected)}")
        selected |= nodes

    nodes = frozenset(selected)
    weight = weight_of(inst.weights, nodes)
    ratio = lp_value = None
    if certify and len(inst.terminals) >= 2:
        lp_value = solve_nwst_lp(inst).value
        if lp_value is not None and lp_value > 0:
            ratio = weight / lp_value
    logger.debug(f"Spider greedy: {rounds} rounds, weight {weight}")
    return SteinerSolution(nodes=nodes, weight=weight, certified_ratio=ratio, lp_value=lp_value)


def solve_nwst_lp(inst: SteinerInstance, max_rounds: Optional[int] = None) -> LPResult:
    """
    Exact optimum of nwST-LP by row generation with the terminal-cut oracle.

    Raises:
        GraphInputError: If fewer than two terminals are given
    """
    if len(inst.terminals) < 2:
        raise GraphInputError(f"nwST-LP needs at least 2 terminals, got {len(inst.terminals)}")
    G, terminals = inst.graph, inst.terminals
    model = CoveringLPModel(
        objective=inst.weights,
        row_oracle=lambda x: separate_nwst_lp(G, x, terminals),
        max_rounds=max_rounds,
    )
    result = solve_covering(model)
    logger.info(f"nwST-LP for {len(terminals)} terminals: {result.status}, value {result.value}")
    return result


def exact_steiner_tree(inst: SteinerInstance, max_vertices: int = 7) -> SteinerSolution:
    """
    Minimum-weight connected node set containing all terminals, by enumeration.

    Ties go to the smaller set, then the lexicographically smaller member list.

    Raises:
        ResourceLimitError: If the graph has more than max_vertices vertices
        SteinerInfeasibleError: If the terminals cannot be connected
    """
    G = inst.graph
    if G.vertex_count > max_vertices:
        raise ResourceLimitError(f"Exact Steiner enumeration limited to {max_vertices} vertices, got {G.vertex_count}")
    _require_same_component(inst)

    others = [v for v in G.vertices if v not in inst.terminals]
    best = None
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            nodes = inst.terminals | frozenset(extra)
            if not induced_is_connected(G, nodes):
                continue
            key = (weight_of(inst.weights, nodes), len(nodes), sorted_members(nodes))
            if best is None or key < best:
                best = key
    weight, _, members = best
    return SteinerSolution(nodes=frozenset(members), weight=weight)


def within_greedy_guarantee(inst: SteinerInstance, solution: SteinerSolution, max_vertices: int = 7) -> bool:
    """
    Compare a greedy solution with 2·H(|T|) times the integral optimum.

    Exceeding the bound is logged as a warning, not raised.
    """
    optimum = exact_steiner_tree(inst, max_vertices).weight
    bound = 2 * harmonic_number(len(inst.terminals)) * optimum
    if solution.weight > bound:
        logger.warning(f"Spider greedy weight {solution.weight} exceeds 2·H(|T|)·OPT = {bound}")
        return False
    return True
