"""
Bundled instance families: paths, cycles, stars, grids and random connected
subgraphs of grids. Grids and their subgraphs are planar by construction.
"""
import logging
from fractions import Fraction
from typing import Dict, Literal, Optional

import networkx as nx
import numpy as np

from .exceptions import GraphInputError
from .graph import Graph
from .instance_io import InstanceFile

logger = logging.getLogger(__name__)

Family = Literal["path", "cycle", "star", "grid", "random-grid"]


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def star_graph(leaves: int) -> Graph:
    """Center 0 with leaves 1..leaves."""
    return Graph.from_networkx(nx.star_graph(leaves))


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex r*cols + c sits at row r, column c."""
    return Graph.from_networkx(nx.grid_2d_graph(rows, cols))


def random_grid_subgraph(rows: int, cols: int, keep: float, seed: int) -> Graph:
    """
    Drop each grid edge independently with probability 1 - keep and return the
    component of the corner vertex, relabeled to 0..m-1.
    """
    if not 0 < keep <= 1:
        raise GraphInputError(f"keep must be in (0, 1], got {keep}")
    rng = np.random.default_rng(seed)
    grid = nx.grid_2d_graph(rows, cols)
    edges = sorted(grid.edges())
    draws = rng.random(len(edges))
    sub = nx.Graph()
    sub.add_nodes_from(grid.nodes())
    sub.add_edges_from(edge for edge, draw in zip(edges, draws) if draw < keep)
    component = sub.subgraph(nx.node_connected_component(sub, (0, 0)))
    return Graph.from_networkx(component)


def random_weights(G: Graph, seed: int, low: int = 1, high: int = 5) -> Dict[int, Fraction]:
    """Independent integer weights in low..high from numpy's default_rng(seed)."""
    rng = np.random.default_rng(seed)
    values = rng.integers(low, high + 1, size=G.vertex_count)
    return {v: Fraction(int(values[v])) for v in G.vertices}


def generate(
    family: Family,
    size: int,
    cols: Optional[int] = None,
    keep: float = 0.7,
    seed: int = 0,
    weighted: bool = False,
) -> InstanceFile:
    """
    Build an instance of a bundled family.

    Args:
        family: path, cycle, star, grid or random-grid
        size: Vertex count (path, cycle), leaf count (star) or rows (grids)
        cols: Grid columns (defaults to size)
        keep: Edge survival probability for random-grid
        seed: Seed for random-grid edges and random weights
        weighted: Random integer capacities and costs instead of all ones
    """
    if family == "path":
        G = path_graph(size)
    elif family == "cycle":
        G = cycle_graph(size)
    elif family == "star":
        G = star_graph(size)
    elif family == "grid":
        G = grid_graph(size, cols or size)
    elif family == "random-grid":
        G = random_grid_subgraph(size, cols or size, keep, seed)
    else:
        raise GraphInputError(f"Unknown family: {family}")

    if weighted:
        capacity = random_weights(G, seed)
        cost = random_weights(G, seed + 1)
    else:
        capacity = {v: Fraction(1) for v in G.vertices}
        cost = dict(capacity)
    logger.debug(f"Generated {family} instance with {G.vertex_count} vertices and {G.edge_count()} edges")
    return InstanceFile(graph=G, capacity=capacity, cost=cost)
