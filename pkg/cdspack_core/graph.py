"""
Graph representation and the neighbourhood, domination and connectivity
predicates every other module builds on.

Vertices are dense integer ids 0..n-1. Adjacency lists are sorted, so iteration
order is deterministic everywhere downstream.
"""
import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from .exceptions import GraphInputError

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[int]
NodeWeights = Dict[int, Fraction]
FractionalSolution = Dict[int, Fraction]
Rational = Union[int, str, Fraction]


class Graph(BaseModel):
    """Undirected simple graph on vertices 0..vertex_count-1."""
    model_config = ConfigDict(frozen=True)

    vertex_count: int
    adjacency: Tuple[Tuple[int, ...], ...]

    _nx_cache: Optional[nx.Graph] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_canonical(self) -> "Graph":
        n = self.vertex_count
        if n < 0:
            raise ValueError(f"vertex_count must be nonnegative, got {n}")
        if len(self.adjacency) != n:
            raise ValueError(f"Expected {n} adjacency lists, got {len(self.adjacency)}")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"Adjacency of {v} must be sorted without repeats: {nbrs}")
            for u in nbrs:
                if not 0 <= u < n:
                    raise ValueError(f"Neighbor {u} of {v} is not a vertex")
                if u == v:
                    raise ValueError(f"Self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"Adjacency is not symmetric for edge {v}-{u}")
        return self

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """
        Build a graph from an edge list.

        Args:
            vertex_count: Number of vertices
            edges: Pairs (u, v); duplicates in either orientation are merged

        Raises:
            GraphInputError: On self-loops or out-of-range endpoints
        """
        nbrs: List[set] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphInputError(f"Edge {u}-{v} has an endpoint outside 0..{vertex_count - 1}")
            if u == v:
                raise GraphInputError(f"Self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count=vertex_count, adjacency=tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabel a networkx graph's nodes to 0..n-1 in sorted node order."""
        relabeled = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return cls.from_edges(relabeled.number_of_nodes(), relabeled.edges())

    def to_networkx(self) -> nx.Graph:
        """Frozen networkx view of this graph (built once, then cached)."""
        if self._nx_cache is None:
            g = nx.Graph()
            g.add_nodes_from(range(self.vertex_count))
            g.add_edges_from(self.edges())
            self._nx_cache = nx.freeze(g)
        return self._nx_cache

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        check_vertex(self, v)
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v, in lexicographic order."""
        return [(u, v) for u in self.vertices for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def is_complete(self) -> bool:
        n = self.vertex_count
        return all(len(nbrs) == n - 1 for nbrs in self.adjacency)


def check_vertex(G: Graph, v: int) -> int:
    """Raise GraphInputError unless v is a vertex id of G."""
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < G.vertex_count:
        raise GraphInputError(f"Invalid vertex id {v!r} for a graph on {G.vertex_count} vertices")
    return v


def check_vertex_set(G: Graph, S: Iterable[int]) -> VertexSet:
    """Validate every member of S and return it as a frozenset."""
    members = frozenset(S)
    for v in members:
        check_vertex(G, v)
    return members


def as_fraction(value: Rational) -> Fraction:
    """Parse an int, a Fraction or a string "p/q" / "p" into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GraphInputError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise GraphInputError(f"Not a rational number: {value!r}") from e
    raise GraphInputError(f"Not an exact rational: {value!r} (floats are not accepted)")


def check_weights(G: Graph, weights: Mapping[int, Rational], name: str = "weights") -> NodeWeights:
    """
    Validate a vertex weighting and normalise it to exact Fractions.

    Args:
        G: The graph the weights live on
        weights: Map vertex -> nonnegative rational; every vertex must appear
        name: Label used in error messages

    Returns:
        Dict vertex -> Fraction, keyed 0..n-1 in order

    Raises:
        GraphInputError: On missing vertices, unknown ids or negative values
    """
    unknown = [v for v in weights if not (isinstance(v, int) and 0 <= v < G.vertex_count)]
    if unknown:
        raise GraphInputError(f"{name} has entries for non-vertices: {sorted(map(str, unknown))}")
    normalised: NodeWeights = {}
    for v in G.vertices:
        if v not in weights:
            raise GraphInputError(f"{name} is missing vertex {v}")
        value = as_fraction(weights[v])
        if value < 0:
            raise GraphInputError(f"{name}({v}) = {value} is negative")
        normalised[v] = value
    return normalised


def uniform_weights(G: Graph, value: Rational = 1) -> NodeWeights:
    value = as_fraction(value)
    return {v: value for v in G.vertices}


def weight_of(weights: Mapping[int, Fraction], S: Iterable[int]) -> Fraction:
    return sum((weights[v] for v in S), Fraction(0))


def open_neighborhood(G: Graph, v: int) -> VertexSet:
    return frozenset(G.neighbors(v))


def closed_neighborhood(G: Graph, v: int) -> VertexSet:
    """Γ⁺(v) = Γ(v) ∪ {v}."""
    return frozenset(G.neighbors(v)) | {v}


def boundary(G: Graph, S: Iterable[int]) -> VertexSet:
    """Γ(S): vertices outside S with at least one neighbour in S."""
    members = check_vertex_set(G, S)
    return frozenset(u for v in members for u in G.adjacency[v] if u not in members)


def is_dominating(G: Graph, D: Iterable[int]) -> bool:
    """True iff every vertex outside D has a neighbour in D. The empty set never dominates."""
    members = check_vertex_set(G, D)
    if not members:
        return False
    return all(v in members or any(u in members for u in G.adjacency[v]) for v in G.vertices)


def induced_is_connected(G: Graph, S: Iterable[int]) -> bool:
    """True iff G[S] is connected; False for the empty set."""
    members = check_vertex_set(G, S)
    if not members:
        return False
    return nx.is_connected(G.to_networkx().subgraph(members))


def is_connected_dominating(G: Graph, D: Iterable[int]) -> bool:
    members = check_vertex_set(G, D)
    return is_dominating(G, members) and induced_is_connected(G, members)


def connected_components(G: Graph, S: Iterable[int]) -> List[VertexSet]:
    """Maximal connected vertex sets of G[S], ordered by smallest member."""
    members = check_vertex_set(G, S)
    if not members:
        return []
    comps = nx.connected_components(G.to_networkx().subgraph(members))
    return sorted((frozenset(c) for c in comps), key=min)


def is_connected(G: Graph) -> bool:
    return G.vertex_count > 0 and nx.is_connected(G.to_networkx())


def require_connected(G: Graph, what: str) -> None:
    if not is_connected(G):
        raise GraphInputError(f"{what} requires a connected graph")


def sorted_members(S: Iterable[int]) -> Tuple[int, ...]:
    """Canonical form of a vertex set, used for tie-breaking and deduplication."""
    return tuple(sorted(S))
