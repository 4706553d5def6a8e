"""Graph types, file formats and preprocessing."""

from .io import load_edge_list, load_labels, read_pair_dir, write_pair_dir
from .models import GraphPair, Matching, SimpleGraph, VertexTable, WeightedDigraph
from .ops import (
    PairStats,
    align_pair,
    drop_isolated,
    edge_disagreements,
    pair_stats,
    preprocess,
    reindex,
    sparsity,
    union_vertices,
)

__all__ = [
    "GraphPair",
    "Matching",
    "PairStats",
    "SimpleGraph",
    "VertexTable",
    "WeightedDigraph",
    "align_pair",
    "drop_isolated",
    "edge_disagreements",
    "load_edge_list",
    "load_labels",
    "pair_stats",
    "preprocess",
    "read_pair_dir",
    "reindex",
    "sparsity",
    "union_vertices",
    "write_pair_dir",
]
