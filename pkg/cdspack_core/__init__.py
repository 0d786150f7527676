"""
cdspack Core Module
-------------------

Fractional connected domatic packings in node-capacitated graphs, computed with
exact rational arithmetic and checked against brute-force oracles.

Main components:
- Graph: immutable graph with neighbourhood and domination predicates
- min_capacity_separator: the minimum separator capacity k with a certificate
- solve_covering / solve_packing_master: exact LP core with row generation
- primal_dual_ds: primal-dual dominating set with certificate checks
- spider_greedy: node-weighted Steiner connector
- round_cds: LP point to connected dominating set
- carr_vempala_decompose / pack_capacitated: the packing pipeline
"""

from .graph import Graph, is_connected_dominating, is_dominating
from .cuts import SeparatorCertificate, ViolatedConstraint, min_capacity_separator, min_vertex_cut
from .lp_engine import CoveringLPModel, LPResult, solve_covering, solve_packing_master
from .primal_dual import PDTrace, DualSolution, primal_dual_ds, reverse_delete
from .steiner import SteinerInstance, SteinerSolution, spider_greedy, solve_nwst_lp
from .cds_pipeline import CDSRounding, round_cds, solve_cds_lp
from .packing import DecompositionResult, Packing, carr_vempala_decompose, pack_capacitated, verify_packing

__version__ = "0.1.0"
__all__ = [
    "Graph",
    "is_dominating",
    "is_connected_dominating",
    "SeparatorCertificate",
    "ViolatedConstraint",
    "min_vertex_cut",
    "min_capacity_separator",
    "CoveringLPModel",
    "LPResult",
    "solve_covering",
    "solve_packing_master",
    "PDTrace",
    "DualSolution",
    "primal_dual_ds",
    "reverse_delete",
    "SteinerInstance",
    "SteinerSolution",
    "spider_greedy",
    "solve_nwst_lp",
    "CDSRounding",
    "round_cds",
    "solve_cds_lp",
    "Packing",
    "DecompositionResult",
    "carr_vempala_decompose",
    "pack_capacitated",
    "verify_packing",
]
