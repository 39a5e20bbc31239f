"""Graph pattern matching by graph, dual, strong and triple simulation."""

from .bipartite import BipartiteGraph, Matching, has_complete_matching, maximum_matching
from .graph import (
    Graph,
    GraphError,
    NodeSet,
    PatternGraph,
    UnsupportedSemantics,
    diameter,
    neighbors,
    potential_matches,
    undirected_distance,
)
from .locality import Ball, extract_ball, match_plus
from .simulation import (
    MatchResult,
    Stats,
    build_match_result,
    dual_simulation,
    graph_simulation,
    strong_simulation,
)
from .triple import (
    AuxStructures,
    TripleMatch,
    init_aux_structs,
    lr_checking,
    lr_checking_quantified,
    transform_quantified_to_lr,
    triple_simulation,
    update_struct,
)

__all__ = [
    "AuxStructures",
    "Ball",
    "BipartiteGraph",
    "Graph",
    "GraphError",
    "MatchResult",
    "Matching",
    "NodeSet",
    "PatternGraph",
    "Stats",
    "TripleMatch",
    "UnsupportedSemantics",
    "build_match_result",
    "diameter",
    "dual_simulation",
    "extract_ball",
    "graph_simulation",
    "has_complete_matching",
    "init_aux_structs",
    "lr_checking",
    "lr_checking_quantified",
    "match_plus",
    "maximum_matching",
    "neighbors",
    "potential_matches",
    "strong_simulation",
    "transform_quantified_to_lr",
    "triple_simulation",
    "undirected_distance",
    "update_struct",
]
