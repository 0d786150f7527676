"""
Instance files and JSON output.

Instance format, one directive per line, "#" starts a comment line:

    nodes <n>
    node <id> <capacity> <cost>
    edge <u> <v>

Ids are dense 0..n-1, each node line appears exactly once, edges are listed once
with u < v. Capacities and costs are nonnegative integers or "p/q".
"""
import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict

from .exceptions import GraphInputError, InstanceParseError
from .graph import Graph, NodeWeights, as_fraction

logger = logging.getLogger(__name__)

RATIONAL_TOKEN = re.compile(r"-?\d+(/\d+)?")


class InstanceFile(BaseModel):
    """A graph with a capacity and a cost per vertex."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: Graph
    capacity: Dict[int, Fraction]
    cost: Dict[int, Fraction]


def _parse_int(token: str, what: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise InstanceParseError(f"{what} must be an integer, got {token!r}", line_number) from e


def _parse_rational(token: str, what: str, line_number: int) -> Fraction:
    if not RATIONAL_TOKEN.fullmatch(token):
        raise InstanceParseError(f"{what} must be an integer or p/q, got {token!r}", line_number)
    try:
        value = as_fraction(token)
    except GraphInputError as e:
        raise InstanceParseError(f"{what} must be an integer or p/q, got {token!r}", line_number) from e
    if value < 0:
        raise InstanceParseError(f"{what} must be nonnegative, got {token}", line_number)
    return value


def parse_instance(text: str) -> InstanceFile:
    """
    Parse instance text.

    Raises:
        InstanceParseError: On any syntax or consistency problem, with the line number
    """
    n = None
    capacity: NodeWeights = {}
    cost: NodeWeights = {}
    edges: List[Tuple[int, int]] = []
    seen_edges: Set[Tuple[int, int]] = set()

    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        keyword = parts[0]

        if n is None:
            if keyword != "nodes" or len(parts) != 2:
                raise InstanceParseError("Expected header 'nodes <n>'", line_number)
            n = _parse_int(parts[1], "node count", line_number)
            if n < 0:
                raise InstanceParseError(f"node count must be nonnegative, got {n}", line_number)
            continue

        if keyword == "node":
            if len(parts) != 4:
                raise InstanceParseError("Expected 'node <id> <capacity> <cost>'", line_number)
            v = _parse_int(parts[1], "node id", line_number)
            if not 0 <= v < n:
                raise InstanceParseError(f"node id {v} outside 0..{n - 1}", line_number)
            if v in capacity:
                raise InstanceParseError(f"node {v} listed twice", line_number)
            capacity[v] = _parse_rational(parts[2], "capacity", line_number)
            cost[v] = _parse_rational(parts[3], "cost", line_number)
        elif keyword == "edge":
            if len(parts) != 3:
                raise InstanceParseError("Expected 'edge <u> <v>'", line_number)
            u = _parse_int(parts[1], "edge endpoint", line_number)
            v = _parse_int(parts[2], "edge endpoint", line_number)
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceParseError(f"edge {u} {v} has an endpoint outside 0..{n - 1}", line_number)
            if u == v:
                raise InstanceParseError(f"self-loop at {u}", line_number)
            if u > v:
                raise InstanceParseError(f"edge endpoints must satisfy u < v, got {u} {v}", line_number)
            if (u, v) in seen_edges:
                raise InstanceParseError(f"edge {u} {v} listed twice", line_number)
            seen_edges.add((u, v))
            edges.append((u, v))
        else:
            raise InstanceParseError(f"Unknown directive {keyword!r}", line_number)

    if n is None:
        raise InstanceParseError("Missing header 'nodes <n>'")
    missing = [v for v in range(n) if v not in capacity]
    if missing:
        raise InstanceParseError(f"Missing node lines for {missing}")

    graph = Graph.from_edges(n, edges)
    logger.debug(f"Parsed instance: {n} nodes, {len(edges)} edges")
    return InstanceFile(graph=graph, capacity=capacity, cost=cost)


def read_instance(path: Union[str, Path]) -> InstanceFile:
    path = Path(path)
    logger.info(f"Reading instance {path}")
    return parse_instance(path.read_text())


def format_instance(instance: InstanceFile) -> str:
    """Canonical text: header, node lines by id, edges in lexicographic order."""
    G = instance.graph
    lines = [f"nodes {G.vertex_count}"]
    lines += [f"node {v} {instance.capacity[v]} {instance.cost[v]}" for v in G.vertices]
    lines += [f"edge {u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def write_instance(instance: InstanceFile, path: Union[str, Path]) -> None:
    Path(path).write_text(format_instance(instance))


def unit_instance(graph: Graph) -> InstanceFile:
    """Capacity 1 and cost 1 on every vertex."""
    ones = {v: Fraction(1) for v in graph.vertices}
    return InstanceFile(graph=graph, capacity=ones, cost=dict(ones))


def rationals(weights: Dict[int, Fraction]) -> Dict[str, str]:
    return {str(v): str(value) for v, value in sorted(weights.items())}


def dump_json(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
