"""
Reproduction harness: runs the primal-dual certificate checks over generated
planar instances and collects approximation statistics.
"""
import logging
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from tabulate import tabulate

from .generators import grid_graph, random_grid_subgraph, random_weights
from .graph import Graph, NodeWeights, is_connected, uniform_weights
from .primal_dual import certify_run, density_constant, gamma_constant, primal_dual_ds, solve_ds_lp

logger = logging.getLogger(__name__)

DEFAULT_RANDOM_SEEDS = 30


class HarnessRow(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    vertices: int
    cost: Fraction
    lp_value: Fraction
    ratio: Optional[Fraction]
    worst_gamma_ratio: Fraction
    certificates_ok: bool
    within_bound: bool

    @property
    def ok(self) -> bool:
        return self.certificates_ok and self.within_bound


class HarnessSummary(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rows: Tuple[HarnessRow, ...]
    bound: Fraction

    @property
    def failures(self) -> List[str]:
        return [row.name for row in self.rows if not row.ok]

    @property
    def max_ratio(self) -> Optional[Fraction]:
        return max((row.ratio for row in self.rows if row.ratio is not None), default=None)

    def count_within(self, factor: Fraction) -> int:
        return sum(1 for row in self.rows if row.ratio is None or row.ratio <= factor)

    def table(self) -> str:
        body = [
            [row.name, row.vertices, str(row.cost), str(row.lp_value),
             "-" if row.ratio is None else f"{float(row.ratio):.3f}",
             str(row.worst_gamma_ratio), "ok" if row.ok else "FAIL"]
            for row in self.rows
        ]
        return tabulate(
            body,
            headers=["Instance", "n", "cost(Y)", "LP", "ratio", "worst gamma", "verdict"],
            tablefmt="grid",
        )

    def to_json_dict(self) -> dict:
        max_ratio = self.max_ratio
        return {
            "instances": len(self.rows),
            "failures": self.failures,
            "bound": str(self.bound),
            "max_ratio": None if max_ratio is None else str(max_ratio),
            "within_10": self.count_within(Fraction(10)),
        }


def planar_suite(
    max_side: int = 6, random_seeds: int = DEFAULT_RANDOM_SEEDS, keep: float = 0.7
) -> Iterator[Tuple[str, Graph, NodeWeights]]:
    """
    Grids up to max_side x max_side and random connected grid subgraphs, each with
    unit and random costs. The defaults yield well over 200 instances.
    """
    for rows in range(2, max_side + 1):
        for cols in range(rows, max_side + 1):
            G = grid_graph(rows, cols)
            yield f"grid{rows}x{cols}-unit", G, uniform_weights(G)
            yield f"grid{rows}x{cols}-w", G, random_weights(G, seed=rows * 100 + cols)
    for seed in range(random_seeds):
        for side in range(3, max_side + 1):
            G = random_grid_subgraph(side, side, keep, seed)
            if G.vertex_count < 2 or not is_connected(G):
                continue
            yield f"rgrid{side}-s{seed}-unit", G, uniform_weights(G)
            yield f"rgrid{side}-s{seed}-w", G, random_weights(G, seed=seed)


def run_instance(name: str, G: Graph, cost: NodeWeights, c_prime: Fraction) -> HarnessRow:
    result = primal_dual_ds(G, cost)
    report = certify_run(G, cost, result, c_prime)
    lp_value = solve_ds_lp(G, cost).value
    bound = gamma_constant(c_prime)
    ratio = report.cost / lp_value if lp_value > 0 else None
    return HarnessRow(
        name=name,
        vertices=G.vertex_count,
        cost=report.cost,
        lp_value=lp_value,
        ratio=ratio,
        worst_gamma_ratio=report.worst_ratio,
        certificates_ok=report.ok,
        within_bound=report.cost <= bound * lp_value,
    )


def run_planar_harness(max_side: int = 6, random_seeds: int = DEFAULT_RANDOM_SEEDS) -> HarnessSummary:
    """Run every planar suite instance and summarize."""
    c_prime = density_constant("planar")
    rows = []
    for name, G, cost in planar_suite(max_side, random_seeds):
        row = run_instance(name, G, cost, c_prime)
        if not row.ok:
            logger.warning(f"Harness instance {name} failed its checks")
        rows.append(row)
    summary = HarnessSummary(rows=tuple(rows), bound=gamma_constant(c_prime))
    logger.info(f"Harness: {len(rows)} instances, {len(summary.failures)} failures, max ratio {summary.max_ratio}")
    return summary
