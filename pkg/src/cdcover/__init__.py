"""Cycle double covers of cubic bridgeless graphs.

The pipeline: build the vertex-colored line graph of a cubic graph, decompose
its edges into rainbow cycles by an inductive case analysis over "good"
edge-colored graphs, and lift the decomposition back to a verified cycle
double cover. Brute-force oracles and independent verifiers certify results
on small instances, and any step that fails its runtime verification ends in
a replayable CaseFailure rather than an unverified answer.
"""
from .coloring import (
    EdgeColoredGraph,
    GoodnessReport,
    GoodnessVerdict,
    VertexClass,
    check_goodness,
    classify_vertex,
    color_classes,
    find_rainbow_triangle,
    find_type_x_vertices,
    longest_singular_path,
    parse_colored_edge_list,
    pseudoblocks,
    serialize_colored_edge_list,
    x_block_decomposition,
)
from .decomposer import (
    CaseFailure,
    DecompositionTrace,
    decompose,
    decompose_goddyn,
    fallback_search,
    find_cycle_all_type2,
    replay_case_failure,
)
from .graphs import (
    Cycle,
    Graph,
    GraphError,
    block_decomposition,
    connected_components,
    contract_edge,
    find_bridges,
    is_cubic,
    parse_edge_list,
    parse_graph6,
    serialize_edge_list,
    serialize_graph6,
    subdivide_edge,
)
from .linegraph import (
    ColoredLineGraph,
    CycleDoubleCover,
    build_line_graph,
    cover_from_decomposition,
    lift_rainbow_cycle,
    project_cycle,
)
from .oracle import (
    GeneratorConfig,
    brute_force_cdc,
    brute_force_rainbow_decomposition,
    enumerate_cycles,
    random_cubic_bridgeless,
)
from .verify import verify_cdc, verify_is_almost_rainbow, verify_rainbow_decomposition

__all__ = [
    "CaseFailure",
    "ColoredLineGraph",
    "Cycle",
    "CycleDoubleCover",
    "DecompositionTrace",
    "EdgeColoredGraph",
    "GeneratorConfig",
    "GoodnessReport",
    "GoodnessVerdict",
    "Graph",
    "GraphError",
    "VertexClass",
    "block_decomposition",
    "brute_force_cdc",
    "brute_force_rainbow_decomposition",
    "build_line_graph",
    "check_goodness",
    "classify_vertex",
    "color_classes",
    "connected_components",
    "contract_edge",
    "cover_from_decomposition",
    "decompose",
    "decompose_goddyn",
    "enumerate_cycles",
    "fallback_search",
    "find_bridges",
    "find_cycle_all_type2",
    "find_rainbow_triangle",
    "find_type_x_vertices",
    "is_cubic",
    "lift_rainbow_cycle",
    "longest_singular_path",
    "parse_colored_edge_list",
    "parse_edge_list",
    "parse_graph6",
    "project_cycle",
    "pseudoblocks",
    "random_cubic_bridgeless",
    "replay_case_failure",
    "serialize_colored_edge_list",
    "serialize_edge_list",
    "serialize_graph6",
    "subdivide_edge",
    "verify_cdc",
    "verify_is_almost_rainbow",
    "verify_rainbow_decomposition",
    "x_block_decomposition",
]
