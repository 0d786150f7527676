"""
Vertex-capacitated minimum cuts, minimum-capacity node separators and the
separation oracles for the exponential constraint families of minCDS-LP and
nwST-LP.

Cuts are computed by node splitting: every vertex v becomes an arc
(v, IN) -> (v, OUT) carrying its weight, every edge becomes two arcs of
"infinite" capacity (total weight + 1). Max-flow runs on exact Fractions.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, List, Literal, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp
from pydantic import BaseModel, ConfigDict, field_validator

from .exceptions import CDSPackError, GraphInputError, NoSeparatorError, NoVertexCutError
from .graph import (
    FractionalSolution,
    Graph,
    NodeWeights,
    VertexSet,
    boundary,
    check_vertex,
    check_vertex_set,
    check_weights,
    closed_neighborhood,
    require_connected,
    sorted_members,
    weight_of,
)

logger = logging.getLogger(__name__)

IN, OUT = 0, 1
ONE = Fraction(1)


class SeparatorCertificate(BaseModel):
    """A vertex cut together with the two sides it separates."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    separator: VertexSet
    side_a: VertexSet
    side_b: VertexSet
    capacity: Fraction

    def to_json_dict(self) -> dict:
        return {
            "k": str(self.capacity),
            "separator": list(sorted_members(self.separator)),
            "sides": [list(sorted_members(self.side_a)), list(sorted_members(self.side_b))],
        }


class ViolatedConstraint(BaseModel):
    """
    A covering row sum_{v in row} x(v) >= 1 that the point misses.

    kind is "domination" (row = Γ⁺(vertex)) or "separator" (row = Γ(side)).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["domination", "separator"]
    row: VertexSet
    slack: Fraction
    vertex: Optional[int] = None
    side: VertexSet = frozenset()

    @field_validator("slack")
    @classmethod
    def _negative(cls, value: Fraction) -> Fraction:
        if value >= 0:
            raise ValueError(f"A violated constraint needs negative slack, got {value}")
        return value

    def describe(self) -> str:
        rows = "+".join(f"x{v}" for v in sorted_members(self.row)) or "0"
        where = f"vertex {self.vertex}" if self.kind == "domination" else f"S={list(sorted_members(self.side))}"
        return f"{self.kind} row at {where}: {rows} >= 1 (mass {1 + self.slack})"


def _split_network(G: Graph, weights: Mapping[int, Fraction]) -> nx.DiGraph:
    big = weight_of(weights, G.vertices) + 1
    network = nx.DiGraph()
    for v in G.vertices:
        network.add_edge((v, IN), (v, OUT), capacity=weights[v])
    for u, v in G.edges():
        network.add_edge((u, OUT), (v, IN), capacity=big)
        network.add_edge((v, OUT), (u, IN), capacity=big)
    return network


def _split_min_cut(
    G: Graph,
    weights: Mapping[int, Fraction],
    source: int,
    sink: int,
    sink_cuttable: bool,
) -> Tuple[Fraction, VertexSet]:
    """
    Minimum-weight vertex set C, source not in C, whose removal cuts source from sink.
    When sink_cuttable is set, the sink itself may belong to C.

    Returns the source-side cut of the final residual network.
    """
    network = _split_network(G, weights)
    s_node = (source, OUT)
    t_node = (sink, OUT) if sink_cuttable else (sink, IN)
    residual = edmonds_karp(network, s_node, t_node, capacity="capacity")
    flow_value = residual.graph["flow_value"]

    reached = {s_node}
    frontier = [s_node]
    while frontier:
        u = frontier.pop()
        for w, attr in residual[u].items():
            if w not in reached and attr["capacity"] - attr["flow"] > 0:
                reached.add(w)
                frontier.append(w)

    cut = frozenset(v for v in G.vertices if (v, IN) in reached and (v, OUT) not in reached)
    cut_weight = weight_of(weights, cut)
    if cut_weight != flow_value:
        raise CDSPackError(f"Cut weight {cut_weight} differs from max-flow value {flow_value}")
    return cut_weight, cut


def _component_of(G: Graph, v: int, removed: VertexSet) -> VertexSet:
    keep = [u for u in G.vertices if u not in removed]
    return frozenset(nx.node_connected_component(G.to_networkx().subgraph(keep), v))


def _certificate(G: Graph, weights: Mapping[int, Fraction], s: int, cut: VertexSet) -> SeparatorCertificate:
    side_a = _component_of(G, s, cut)
    side_b = frozenset(G.vertices) - cut - side_a
    return SeparatorCertificate(
        separator=cut, side_a=side_a, side_b=side_b, capacity=weight_of(weights, cut)
    )


def min_vertex_cut(G: Graph, weights: Mapping[int, Fraction], s: int, t: int) -> SeparatorCertificate:
    """
    Minimum-weight vertex set separating s from t.

    Args:
        G: The graph
        weights: Nonnegative rational weight per vertex
        s: Source vertex, ends up in side_a
        t: Target vertex, ends up in side_b

    Returns:
        SeparatorCertificate; the empty cut with capacity 0 when s and t are
        already in different components

    Raises:
        NoVertexCutError: If s == t or s is adjacent to t
    """
    check_vertex(G, s)
    check_vertex(G, t)
    if s == t or G.has_edge(s, t):
        raise NoVertexCutError(f"No vertex cut exists between {s} and {t}: they are identical or adjacent")
    weights = check_weights(G, weights)

    if t not in _component_of(G, s, frozenset()):
        logger.debug(f"Vertices {s} and {t} are already disconnected")
        return _certificate(G, weights, s, frozenset())

    _, cut = _split_min_cut(G, weights, s, t, sink_cuttable=False)
    return _certificate(G, weights, s, cut)


def _separator_key(cert: SeparatorCertificate, pair: Tuple[int, int]):
    return cert.capacity, sorted_members(cert.separator), pair


def _non_adjacent_pairs(G: Graph) -> List[Tuple[int, int]]:
    return [(s, t) for s in G.vertices for t in range(s + 1, G.vertex_count) if not G.has_edge(s, t)]


def _shortcut_pairs(G: Graph) -> List[Tuple[int, int]]:
    # With uniform capacities a minimum separator either avoids a fixed vertex s,
    # or contains it and then s has neighbours on both sides.
    s = min(G.vertices, key=lambda v: (len(G.adjacency[v]), v))
    nbrs = G.adjacency[s]
    pairs = {tuple(sorted((s, t))) for t in G.vertices if t != s and not G.has_edge(s, t)}
    pairs.update(
        (a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:] if not G.has_edge(a, b)
    )
    return sorted(pairs)


def min_capacity_separator(
    G: Graph,
    capacity: Mapping[int, Fraction],
    uniform_shortcut: bool = False,
    max_workers: int = 1,
) -> SeparatorCertificate:
    """
    Minimum-capacity node separator of a connected, non-complete graph.

    Args:
        G: Connected graph
        capacity: Nonnegative rational capacity per vertex
        uniform_shortcut: Restrict the pair sweep to the pairs that suffice when
            all capacities are equal (ignored otherwise)
        max_workers: Thread pool size for the pair sweep

    Returns:
        The separator certificate; its capacity is the parameter k

    Raises:
        NoSeparatorError: If G is complete
        GraphInputError: If G is disconnected or capacities are invalid
    """
    require_connected(G, "min_capacity_separator")
    capacity = check_weights(G, capacity, "capacity")
    if G.is_complete():
        raise NoSeparatorError("Complete graphs have no node separator")

    uniform = len(set(capacity.values())) == 1
    if uniform_shortcut and uniform:
        pairs = _shortcut_pairs(G)
    else:
        if uniform_shortcut:
            logger.warning("Capacities are not uniform; falling back to the full pair sweep")
        pairs = _non_adjacent_pairs(G)
    logger.debug(f"Sweeping {len(pairs)} vertex pairs for the minimum separator")

    def cut_for(pair: Tuple[int, int]) -> SeparatorCertificate:
        return min_vertex_cut(G, capacity, *pair)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            certificates = list(executor.map(cut_for, pairs))
    else:
        certificates = [cut_for(pair) for pair in pairs]

    best, _ = min(zip(certificates, pairs), key=lambda item: _separator_key(*item))
    logger.info(f"Minimum separator {sorted_members(best.separator)} with capacity {best.capacity}")
    return best


def _domination_violation(G: Graph, x: FractionalSolution) -> Optional[ViolatedConstraint]:
    worst = None
    for v in G.vertices:
        row = closed_neighborhood(G, v)
        mass = weight_of(x, row)
        if mass < 1 and (worst is None or mass < worst[0]):
            worst = (mass, v, row)
    if worst is None:
        return None
    mass, v, row = worst
    return ViolatedConstraint(kind="domination", row=row, slack=mass - ONE, vertex=v)


def separate_ds_lp(G: Graph, x: Mapping[int, Fraction]) -> Optional[ViolatedConstraint]:
    """Most violated minDS-LP row, or None if x is feasible."""
    return _domination_violation(G, check_weights(G, x, "x"))


def separate_cds_lp(G: Graph, x: Mapping[int, Fraction]) -> Optional[ViolatedConstraint]:
    """
    Separation oracle for minCDS-LP.

    Domination rows are checked first (most violated, smallest vertex on ties).
    Then every non-adjacent pair (s, t) is cut with x as vertex weights; a cut of
    weight below 1 yields S = component of s, whose boundary Γ(S) is the row.

    Args:
        G: Connected graph
        x: Nonnegative rational point

    Returns:
        The most violated constraint, or None iff x is feasible

    Raises:
        GraphInputError: On negative entries or a disconnected graph
    """
    require_connected(G, "separate_cds_lp")
    x = check_weights(G, x, "x")
    violated = _domination_violation(G, x)
    if violated is not None:
        return violated

    best = None
    for s, t in _non_adjacent_pairs(G):
        value, cut = _split_min_cut(G, x, s, t, sink_cuttable=False)
        if value >= 1:
            continue
        side = _component_of(G, s, cut)
        row = boundary(G, side)
        key = (weight_of(x, row), sorted_members(row), (s, t))
        if best is None or key < best[0]:
            best = (key, side, row)
    if best is None:
        return None
    (mass, _, _), side, row = best
    return ViolatedConstraint(kind="separator", row=row, slack=mass - ONE, side=side)


def separate_nwst_lp(
    G: Graph, x: Mapping[int, Fraction], terminals: Iterable[int]
) -> Optional[ViolatedConstraint]:
    """
    Separation oracle for nwST-LP with terminal set T.

    For every ordered terminal pair (a, b) the cheapest boundary of a set S with
    a in S and b not in S is a vertex cut from a to b that may include b itself.

    Raises:
        GraphInputError: If |T| < 2 or x has negative entries
    """
    terminals = check_vertex_set(G, terminals)
    if len(terminals) < 2:
        raise GraphInputError(f"separate_nwst_lp needs at least 2 terminals, got {len(terminals)}")
    x = check_weights(G, x, "x")

    ordered = sorted_members(terminals)
    best = None
    for a in ordered:
        for b in ordered:
            if a == b:
                continue
            value, cut = _split_min_cut(G, x, a, b, sink_cuttable=True)
            if value >= 1:
                continue
            side = _component_of(G, a, cut)
            row = boundary(G, side)
            key = (weight_of(x, row), sorted_members(row), (a, b))
            if best is None or key < best[0]:
                best = (key, side, row)
    if best is None:
        return None
    (mass, _, _), side, row = best
    return ViolatedConstraint(kind="separator", row=row, slack=mass - ONE, side=side)


def check_lp_point(
    G: Graph,
    x: Mapping[int, Fraction],
    which: Literal["minDS", "minCDS", "nwST"],
    terminals: Optional[Iterable[int]] = None,
) -> Optional[ViolatedConstraint]:
    """Dispatch to the separation oracle of the named LP."""
    if which == "minDS":
        return separate_ds_lp(G, x)
    if which == "minCDS":
        return separate_cds_lp(G, x)
    if which == "nwST":
        if terminals is None:
            raise GraphInputError("nwST check needs a terminal set")
        return separate_nwst_lp(G, x, terminals)
    raise GraphInputError(f"Unknown LP: {which}")
