"""Exact graph counting and detection by sieving spanning trees with roots of unity."""

from .apps import (
    count_ham_paths_directed,
    count_ham_paths_undirected,
    count_k_matchings_bipartite,
    count_kstar_covers,
    count_maximum_matchings,
    count_pm_bipartite,
    detect_ham_path_bip_directed,
    detect_ham_path_bip_undirected,
    detect_ham_path_indep_directed,
    detect_ham_path_indep_undirected,
)
from .graphcore import Graph, format_graph, parse_graph
from .sieve import CountResult, DetectResult, SieveInstance, run_count, run_detect

__all__ = [
    "Graph",
    "parse_graph",
    "format_graph",
    "SieveInstance",
    "CountResult",
    "DetectResult",
    "run_count",
    "run_detect",
    "count_ham_paths_undirected",
    "count_ham_paths_directed",
    "detect_ham_path_bip_undirected",
    "detect_ham_path_bip_directed",
    "detect_ham_path_indep_undirected",
    "detect_ham_path_indep_directed",
    "count_pm_bipartite",
    "count_k_matchings_bipartite",
    "count_kstar_covers",
    "count_maximum_matchings",
]
