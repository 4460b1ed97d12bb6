"""Independence polynomials of hypergraphs.

Exact evaluation by deletion/contraction, zero-free radii for bounded-degree
hypergraphs, a cluster-expansion approximation with certified error, extremal
constructions and empirical zero scans.
"""

from .bounds import (BoundReport, ConstraintWitness, bcr_radius, bound_report, bound_table,
                     hypergraph_radius, hypertree_radius, hypertree_simple, shearer_radius,
                     tree_witness, verify_constraints_general, verify_constraints_tree)
from .cluster import ApproxResult, approx_Z, choose_r, connected_sets, taylor_coeffs, \
    truncation_error_bound
from .constructions import (ConstructionSpec, InfeasibleError, ProbeResult, bisect_root,
                            build_random_hypergraph, build_random_linear_hypertree,
                            build_regular_tree_truncation, build_samotij, build_star,
                            samotij_negativity_probe, samotij_threshold, samotij_Z_closed_form,
                            star_negativity_probe, star_normalized, star_threshold,
                            star_Z_closed_form)
from .exact import (BudgetExceeded, IdentityCheck, brute_force_coeffs, brute_force_Z, dc_coeffs,
                    dc_eval, dc_eval_many, verify_edge_identity, verify_vertex_identity)
from .hypergraph import Hypergraph, HypergraphError, HypergraphStats, load, dump, parse_hg, \
    parse_json, to_hg, to_json
from .poly import DensePolynomial, LogTruncation, RootFindingError, min_modulus_root, roots, \
    series_exp, series_log
from .zeroscan import MinRoot, ScanResult, min_root_of, negative_axis_root, scan_disk

__all__ = [
    "ApproxResult", "BoundReport", "BudgetExceeded", "ConstraintWitness", "ConstructionSpec",
    "DensePolynomial", "Hypergraph", "HypergraphError", "HypergraphStats", "IdentityCheck",
    "InfeasibleError", "LogTruncation", "MinRoot", "ProbeResult", "RootFindingError",
    "ScanResult", "approx_Z", "bcr_radius", "bisect_root", "bound_report", "bound_table",
    "brute_force_Z", "brute_force_coeffs", "build_random_hypergraph",
    "build_random_linear_hypertree", "build_regular_tree_truncation", "build_samotij",
    "build_star", "choose_r", "connected_sets", "dc_coeffs", "dc_eval", "dc_eval_many", "dump",
    "hypergraph_radius", "hypertree_radius", "hypertree_simple", "load", "min_modulus_root",
    "min_root_of", "negative_axis_root", "parse_hg", "parse_json", "roots",
    "samotij_Z_closed_form", "samotij_negativity_probe", "samotij_threshold", "scan_disk",
    "series_exp", "series_log", "shearer_radius", "star_Z_closed_form", "star_negativity_probe",
    "star_normalized", "star_threshold", "taylor_coeffs", "to_hg", "to_json", "tree_witness",
    "truncation_error_bound", "verify_constraints_general", "verify_constraints_tree",
    "verify_edge_identity", "verify_vertex_identity",
]

__version__ = "0.1.0"
