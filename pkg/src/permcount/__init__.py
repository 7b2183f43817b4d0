"""Counting satisfying assignments mod 3 through permanents, gadgets and FKT."""

from .errors import NonPlanarBDC, PermcountError
from .formulas import Assignment, CnfFormula, count_sat_brute, parse_dimacs, write_dimacs
from .gadgets import Gadget, Signature, builtin_gadget, signature
from .graphs import DirectedGraph, UndirectedGraph, bipartite_double_cover
from .linalg import IntMatrix, determinant, permanent
from .matchings import count_pm_fkt, count_pm_fkt_mod
from .pipeline import (
    algorithm_a,
    algorithm_b,
    build_forest_graph,
    build_pn_planar_graph,
    build_valiant_graph,
    count_mod3_forest,
    extract_solution,
    make_decider,
)
from .planarity import BdcClass, circular_planar, classify_bdc, planarity_test
from .search import SearchConfig, conjecture_survey, search_gadgets

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BdcClass",
    "CnfFormula",
    "DirectedGraph",
    "Gadget",
    "IntMatrix",
    "NonPlanarBDC",
    "PermcountError",
    "SearchConfig",
    "Signature",
    "UndirectedGraph",
    "algorithm_a",
    "algorithm_b",
    "bipartite_double_cover",
    "build_forest_graph",
    "build_pn_planar_graph",
    "build_valiant_graph",
    "builtin_gadget",
    "circular_planar",
    "classify_bdc",
    "conjecture_survey",
    "count_mod3_forest",
    "count_pm_fkt",
    "count_pm_fkt_mod",
    "count_sat_brute",
    "determinant",
    "extract_solution",
    "make_decider",
    "parse_dimacs",
    "permanent",
    "planarity_test",
    "search_gadgets",
    "signature",
    "write_dimacs",
]
