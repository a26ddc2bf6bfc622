"""Hamiltonian cycles in digraphs with degree bound two, via projector-graph matchings.

Builds the bipartite projector of a digraph, searches its perfect matchings
by rank-guided component flips, and audits the method's claims against a
brute-force oracle.
"""

from .digraph import (
    DegreeClass,
    DegreeKind,
    Digraph,
    IncidenceMatrix,
    build_incidence,
    classify,
    forward_relation,
    is_hamiltonian_subgraph,
    is_simple_cycle,
    is_strongly_connected,
    parse_digraph,
    rank_by_components,
    rank_exact,
    split_incidence,
)
from .matching import Matching, count_matchings, enumerate_matchings, flip, hopcroft_karp, perfect_matching
from .projector import (
    ComponentDecomposition,
    ProjectorGraph,
    code_of,
    decompose,
    hall_violation,
    lift,
    matching_edges_from_code,
    project,
    two_matchings_of_cycle,
)
from .solver import (
    SolveOutcome,
    SplitMap,
    Verdict,
    find_second_hc,
    solve_exact,
    solve_greedy,
    split_degree_two,
    unsplit,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeClass",
    "DegreeKind",
    "Digraph",
    "IncidenceMatrix",
    "build_incidence",
    "classify",
    "forward_relation",
    "is_hamiltonian_subgraph",
    "is_simple_cycle",
    "is_strongly_connected",
    "parse_digraph",
    "rank_by_components",
    "rank_exact",
    "split_incidence",
    "Matching",
    "count_matchings",
    "enumerate_matchings",
    "flip",
    "hopcroft_karp",
    "perfect_matching",
    "ComponentDecomposition",
    "ProjectorGraph",
    "code_of",
    "decompose",
    "hall_violation",
    "lift",
    "matching_edges_from_code",
    "project",
    "two_matchings_of_cycle",
    "SolveOutcome",
    "SplitMap",
    "Verdict",
    "find_second_hc",
    "solve_exact",
    "solve_greedy",
    "split_degree_two",
    "unsplit",
]

