"""
CLI for cdspack: separators, packings, rounding and the exact oracles
"""
import sys
import os
import typer
from contextlib import contextmanager
from fractions import Fraction
from typing import Optional
from pathlib import Path
import logging

# Add parent directory to Python path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cdspack_core.config import LOG_FORMAT, get_settings
from cdspack_core.exceptions import CDSPackError, InstanceParseError, ResourceLimitError
from cdspack_core.graph import as_fraction, sorted_members
from cdspack_core.instance_io import dump_json, format_instance, rationals, read_instance
from cdspack_core.cuts import min_capacity_separator
from cdspack_core.lp_engine import format_lp_dump
from cdspack_core.primal_dual import certify_run, density_constant, primal_dual_ds
from cdspack_core.cds_pipeline import round_cds, solve_cds_lp
from cdspack_core.packing import pack_capacitated, packing_to_json, verify_packing
from cdspack_core.oracles import (
    OracleBudget,
    dense_lp_solve,
    enumerate_cds,
    exact_fractional_cds_packing,
    exact_min_cost_set,
    integrality_gaps,
)
from cdspack_core.generators import generate as generate_instance
from cdspack_core.harness import DEFAULT_RANDOM_SEEDS, run_planar_harness

# Configure logging
settings = get_settings()
logging.basicConfig(level=settings.log_level, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

EXIT_PARSE = 1
EXIT_STRUCTURAL = 2
EXIT_RESOURCE = 3

app = typer.Typer(help="cdspack CLI - fractional connected domatic packings with exact certificates")

InstanceArg = typer.Argument(..., exists=True, dir_okay=False, help="Instance file")


def _fail(message: str, code: int):
    logger.error(message)
    typer.echo(typer.style(f"Error: {message}", fg="red"), err=True)
    raise typer.Exit(code)


@contextmanager
def _exit_codes():
    """Map the error taxonomy onto exit codes 1 (parse), 2 (structural), 3 (resource)."""
    try:
        yield
    except InstanceParseError as e:
        _fail(f"Parse error: {e}", EXIT_PARSE)
    except ResourceLimitError as e:
        _fail(f"Resource limit: {e}", EXIT_RESOURCE)
    except (CDSPackError, ValueError) as e:
        _fail(str(e), EXIT_STRUCTURAL)


def _emit(payload: dict):
    typer.echo(dump_json(payload), nl=False)


@app.command()
def separator(
    instance: Path = InstanceArg,
    uniform_shortcut: bool = typer.Option(False, "--uniform-shortcut", help="Reduced pair sweep for uniform capacities"),
):
    """Minimum-capacity node separator (the parameter k) with its certificate."""
    with _exit_codes():
        inst = read_instance(instance)
        cert = min_capacity_separator(
            inst.graph, inst.capacity, uniform_shortcut=uniform_shortcut, max_workers=settings.max_workers
        )
        _emit(cert.to_json_dict())


@app.command()
def pack(
    instance: Path = InstanceArg,
    rho_cap: Optional[str] = typer.Option(None, "--rho-cap", help="Upper limit on rho, integer or p/q"),
    max_rounds: Optional[int] = typer.Option(None, "--max-rounds", help="Column generation round cap"),
    verify: bool = typer.Option(False, "--verify", help="Append an exact feasibility report"),
):
    """Fractional connected domatic packing of size k/rho under the capacities."""
    with _exit_codes():
        inst = read_instance(instance)
        cap = as_fraction(rho_cap) if rho_cap is not None else None
        packing, k, rho = pack_capacitated(
            inst.graph,
            inst.capacity,
            max_rounds=max_rounds or settings.decompose_max_rounds,
            rho_cap=cap,
            max_workers=settings.max_workers,
        )
        payload = packing_to_json(packing, k, rho)
        if verify:
            report = verify_packing(inst.graph, inst.capacity, packing)
            payload["verification"] = report.to_json_dict()
            if not report.ok:
                _emit(payload)
                _fail("Packing failed verification", EXIT_STRUCTURAL)
        _emit(payload)


@app.command()
def ds(
    instance: Path = InstanceArg,
    check_certificates: bool = typer.Option(False, "--check-certificates", help="Verify every primal-dual certificate"),
    family: str = typer.Option("planar", help="Graph family for c': planar, bipartite_planar or minor_free"),
    c_prime: Optional[str] = typer.Option(None, "--c-prime", help="Density constant for the minor_free family"),
):
    """Primal-dual minimum-cost dominating set with its dual and trace."""
    with _exit_codes():
        inst = read_instance(instance)
        result = primal_dual_ds(inst.graph, inst.cost)
        payload = {
            "Y": list(sorted_members(result.Y)),
            "cost": str(sum((inst.cost[v] for v in result.Y), Fraction(0))),
            "y": rationals(result.y.y),
            "trace": result.trace.to_json_dict(),
        }
        if check_certificates:
            constant = density_constant(family, as_fraction(c_prime) if c_prime is not None else None)
            report = certify_run(inst.graph, inst.cost, result, constant)
            payload["certificates"] = report.to_json_dict()
            if not report.ok:
                _emit(payload)
                _fail(f"Certificate checks failed: {', '.join(report.failures())}", EXIT_STRUCTURAL)
        _emit(payload)


@app.command()
def cds(
    instance: Path = InstanceArg,
    dump_lp: Optional[Path] = typer.Option(None, "--dump-lp", help="Write the final LP rows and point to this file"),
    max_rounds: Optional[int] = typer.Option(None, "--max-rounds", help="Row generation cap"),
):
    """Solve minCDS-LP exactly and round it to a connected dominating set."""
    with _exit_codes():
        inst = read_instance(instance)
        lp = solve_cds_lp(inst.graph, inst.cost, max_rounds=max_rounds or settings.lp_max_rounds)
        if dump_lp is not None:
            dump_lp.write_text(format_lp_dump(lp))
            logger.info(f"LP dump written to {dump_lp}")
        rounding = round_cds(inst.graph, inst.cost, lp.x)
        _emit({"lp": lp.to_json_dict(), "rounding": rounding.to_json_dict()})


@app.command()
def exact(
    instance: Path = InstanceArg,
    what: str = typer.Option("packing", "--what", help="packing, ds, cds, sets, lp-ds or lp-cds"),
):
    """Brute-force ground truth on a small instance."""
    with _exit_codes():
        inst = read_instance(instance)
        budget = OracleBudget.from_settings()
        G = inst.graph
        if what == "packing":
            value, packing = exact_fractional_cds_packing(G, inst.capacity, budget)
            payload = {"value": str(value), "packing": packing_to_json(packing)}
        elif what in ("ds", "cds"):
            members, value = exact_min_cost_set(G, inst.cost, what.upper(), budget)
            payload = {"set": list(sorted_members(members)), "value": str(value)}
        elif what == "sets":
            payload = {"cds": [list(sorted_members(D)) for D in enumerate_cds(G, budget)]}
        elif what in ("lp-ds", "lp-cds"):
            which = "minDS" if what == "lp-ds" else "minCDS"
            payload = dense_lp_solve(G, which, inst.cost, budget=budget).to_json_dict()
        else:
            _fail(f"Unknown --what value: {what}", EXIT_STRUCTURAL)
        _emit(payload)


@app.command()
def gap(instance: Path = InstanceArg):
    """Exact integral / LP optimum ratios for minDS and minCDS."""
    with _exit_codes():
        inst = read_instance(instance)
        report = integrality_gaps(inst.graph, inst.cost, OracleBudget.from_settings())
        _emit(report.to_json_dict())


@app.command()
def generate(
    family: str = typer.Argument(..., help="path, cycle, star, grid or random-grid"),
    size: int = typer.Argument(..., help="Vertices (path, cycle), leaves (star) or rows (grids)"),
    cols: Optional[int] = typer.Option(None, help="Grid columns"),
    keep: float = typer.Option(0.7, help="Edge survival probability for random-grid"),
    seed: int = typer.Option(0, help="Random seed"),
    weighted: bool = typer.Option(False, "--weighted", help="Random integer capacities and costs"),
    output: Optional[Path] = typer.Option(None, help="Output file (stdout if omitted)"),
):
    """Emit an instance file of a bundled family."""
    with _exit_codes():
        text = format_instance(generate_instance(family, size, cols=cols, keep=keep, seed=seed, weighted=weighted))
        if output is not None:
            output.write_text(text)
            typer.echo(f"{typer.style('Success:', fg='green')} Instance saved to {output}", err=True)
        else:
            typer.echo(text, nl=False)


@app.command()
def harness(
    max_side: int = typer.Option(6, help="Largest grid side"),
    seeds: int = typer.Option(DEFAULT_RANDOM_SEEDS, help="Random grid subgraphs per size"),
):
    """Primal-dual certificate sweep over generated planar instances."""
    with _exit_codes():
        summary = run_planar_harness(max_side=max_side, random_seeds=seeds)
        typer.echo(summary.table(), err=True)
        _emit(summary.to_json_dict())
        if summary.failures:
            _fail(f"{len(summary.failures)} instances failed", EXIT_STRUCTURAL)


if __name__ == "__main__":
    app()
