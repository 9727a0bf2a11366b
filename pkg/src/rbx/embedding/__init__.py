from .aux import (AuxGraph, HypothesisReport, add_edges, build_aux_H, check_coordinate_hypotheses,
                  chromatic_number, even_paths)
from .constructions import CASES, applicable_cases, h0_construction
from .coordinate import coordinate_embed
from .greedy import embed_many_leaves, greedy_embed_min_degree, k2r_embed, leaf_heavy_threshold
from .lemmas import FORK, P3Certificate, P4Witness, certify_p3_structure, fork_graph, rainbow_p4_witness
from .search import (Embedding, SearchResult, Status, count_rainbow_hamiltonian_paths, embeds_uncolored,
                     find_rainbow, hamiltonian_paths, validate_embedding)
from .trace import Trace, format_trace, parse_trace, step_lines

__all__ = [
    "AuxGraph", "HypothesisReport", "add_edges", "build_aux_H", "check_coordinate_hypotheses",
    "chromatic_number", "even_paths", "CASES", "applicable_cases", "h0_construction",
    "coordinate_embed", "embed_many_leaves", "greedy_embed_min_degree", "k2r_embed",
    "leaf_heavy_threshold", "FORK", "P3Certificate", "P4Witness", "certify_p3_structure",
    "fork_graph", "rainbow_p4_witness", "Embedding", "SearchResult", "Status",
    "count_rainbow_hamiltonian_paths", "embeds_uncolored", "find_rainbow", "hamiltonian_paths",
    "validate_embedding", "Trace", "format_trace", "parse_trace", "step_lines",
]
