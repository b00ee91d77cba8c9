"""Hamiltonicity algorithms built on a rank basis of the matchings connectivity matrix."""

from .errors import BudgetError, HcBasisError, ParseError, ValidationError
from .gf2 import Gf2Matrix, Gf2Vector, is_permutation_matrix, multiply, rank, solve
from .graph import (CnfFormula, Graph, GraphFormat, NicePathDecomposition, PathDecomposition,
                    heuristic_decomposition, parse_cnf, parse_graph, parse_path_decomposition,
                    serialize_graph, serialize_path_decomposition, to_nice_decomposition,
                    validate_decomposition)
from .matchings import (BasisIndex, PerfectMatching, build_hc_matrix, change_basis,
                        enumerate_matchings, expand_in_basis, factorize, generate_basis, partner)
from .parity import (WeightAssignment, decide_hamiltonicity_mc, parity_hc_directed_bipartite,
                     parity_hc_undirected, weighted_parity_profile)
from .pathwidth import (FingerprintTable, dp_finalize, dp_forget_vertex, dp_init, dp_introduce_edge,
                        dp_introduce_vertex, pw_parity_profile, solve_cubic, solve_pw)
from .reduction import (GadgetSpec, ReductionOutput, build_induced_subgraph_gadget,
                        certify_assignment, reduce)

__version__ = "0.1.0"

__all__ = [
    "BasisIndex", "BudgetError", "CnfFormula", "FingerprintTable", "GadgetSpec", "Gf2Matrix",
    "Gf2Vector", "Graph", "GraphFormat", "HcBasisError", "NicePathDecomposition", "ParseError",
    "PathDecomposition", "PerfectMatching", "ReductionOutput", "ValidationError", "WeightAssignment",
    "build_hc_matrix", "build_induced_subgraph_gadget", "certify_assignment", "change_basis",
    "decide_hamiltonicity_mc", "dp_finalize", "dp_forget_vertex", "dp_init", "dp_introduce_edge",
    "dp_introduce_vertex", "enumerate_matchings", "expand_in_basis", "factorize", "generate_basis",
    "heuristic_decomposition", "is_permutation_matrix", "multiply", "parity_hc_directed_bipartite",
    "parity_hc_undirected", "parse_cnf", "parse_graph", "parse_path_decomposition", "partner",
    "pw_parity_profile", "rank", "reduce", "serialize_graph", "serialize_path_decomposition",
    "solve", "solve_cubic", "solve_pw", "to_nice_decomposition", "validate_decomposition",
    "weighted_parity_profile",
]
