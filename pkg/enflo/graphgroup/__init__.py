"""Unit-distance graphs, their wedge, and the group presented by edges modulo loops.

Usage:
    from enflo.graphgroup import unit_graph, spanning_tree, isometric_embedding_check

    graph = unit_graph(spec)
    report = isometric_embedding_check(graph, spanning_tree(graph), budget=8)
"""

from .embedding import (
    EmbeddingReport,
    LoopReport,
    WordMetricReport,
    generator_distortion,
    generator_images,
    isometric_embedding_check,
    loop_check,
    word_metric_check,
)
from .graphs import (
    DisconnectedGraphError,
    GraphError,
    basepoint,
    bfs_distance,
    encode_node,
    neighbors,
    oriented,
    pointed_cycle,
    unit_graph,
    unit_graph_wedge,
    wedge,
    write_edge_list,
)
from .tree import SpanningTree, spanning_tree
from .words import (
    GroupElement,
    InsufficientBallError,
    WordMetric,
    cayley_ball,
    free_reduce,
    subgroup_distortion,
    word_length,
)

__all__ = [
    "neighbors",
    "unit_graph",
    "pointed_cycle",
    "basepoint",
    "wedge",
    "unit_graph_wedge",
    "bfs_distance",
    "oriented",
    "encode_node",
    "write_edge_list",
    "SpanningTree",
    "spanning_tree",
    "GroupElement",
    "free_reduce",
    "WordMetric",
    "word_length",
    "cayley_ball",
    "subgroup_distortion",
    "EmbeddingReport",
    "LoopReport",
    "generator_images",
    "loop_check",
    "isometric_embedding_check",
    "WordMetricReport",
    "word_metric_check",
    "generator_distortion",
    "GraphError",
    "DisconnectedGraphError",
    "InsufficientBallError",
]
