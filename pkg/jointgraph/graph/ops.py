"""Preprocessing pipeline and structural statistics for graph pairs."""

from __future__ import annotations

import logging
from math import comb

import numpy as np
from pydantic import BaseModel
from scipy import sparse

from jointgraph.errors import DegenerateGraphError, InputValidationError
from jointgraph.graph.models import (
    GraphPair,
    Matching,
    SimpleGraph,
    VertexTable,
    WeightedDigraph,
)

logger = logging.getLogger(__name__)


def union_vertices(*tables: VertexTable) -> VertexTable:
    """Return the canonical table over every name in ``tables``."""
    names: set[str] = set()
    for table in tables:
        names.update(table.names)
    return VertexTable.canonical(sorted(names))


def reindex(g: WeightedDigraph, vertices: VertexTable) -> WeightedDigraph:
    """Re-express ``g`` over ``vertices``, which must contain all of its names."""
    missing = [name for name in g.vertices.names if name not in vertices.index]
    if missing:
        raise InputValidationError(f"vertex {missing[0]!r} is not in the target vertex table")
    mapping = np.array([vertices.index[name] for name in g.vertices.names], dtype=np.int64)
    coo = g.weights.tocoo()
    return WeightedDigraph.from_arcs(vertices, mapping[coo.row], mapping[coo.col], coo.data)


def preprocess(g: WeightedDigraph) -> SimpleGraph:
    """Symmetrize, binarize at strictly positive and zero the diagonal."""
    w = g.weights + g.weights.T
    a = (w.toarray() > 0).astype(np.float64)
    np.fill_diagonal(a, 0.0)
    graph = SimpleGraph(a, g.vertices)
    logger.debug(
        "Preprocessed digraph",
        extra={"vertices": g.n, "arcs": g.n_arcs, "loops": g.n_loops, "edges": graph.n_edges},
    )
    return graph


def as_digraph(g: SimpleGraph) -> WeightedDigraph:
    """View a simple graph as a unit-weight digraph with both arc directions."""
    return WeightedDigraph(g.vertices, sparse.csr_matrix(g.adjacency))


def align_pair(d1: WeightedDigraph, d2: WeightedDigraph) -> GraphPair:
    """Preprocess two digraphs over the union of their vertex names."""
    table = union_vertices(d1.vertices, d2.vertices)
    return GraphPair(preprocess(reindex(d1, table)), preprocess(reindex(d2, table)))


def drop_isolated(pair: GraphPair) -> tuple[GraphPair, dict[int, int]]:
    """Remove vertices isolated in either graph.

    Returns the reduced pair and the map from surviving old indices to new
    indices.
    """
    keep = np.flatnonzero((pair.g1.degrees > 0) & (pair.g2.degrees > 0))
    if keep.size == 0:
        raise DegenerateGraphError("every vertex is isolated in at least one graph")
    index_map = {int(old): new for new, old in enumerate(keep)}
    if keep.size == pair.n:
        return pair, index_map
    logger.info("Dropping isolated vertices", extra={"dropped": pair.n - int(keep.size)})
    return pair.permuted(keep), index_map


def sparsity(g: SimpleGraph) -> float:
    """Return the fraction of vertex pairs joined by an edge."""
    if g.n < 2:
        raise InputValidationError(f"sparsity needs at least 2 vertices, got {g.n}")
    return g.n_edges / comb(g.n, 2)


def edge_disagreements(a1: SimpleGraph, a2: SimpleGraph, phi: Matching) -> int:
    """Count unordered vertex pairs whose adjacency differs under ``phi``."""
    if not (a1.n == a2.n == phi.n):
        raise InputValidationError(
            f"size mismatch: graphs have {a1.n} and {a2.n} vertices, matching has {phi.n}"
        )
    aligned = a2.adjacency[np.ix_(phi.phi, phi.phi)]
    return int(np.abs(a1.adjacency - aligned).sum()) // 2


class GraphStats(BaseModel):
    """Edge statistics of one graph of a pair."""

    arcs_loaded: int
    loops_loaded: int
    edges_before_drop: int
    sparsity_before_drop: float
    edges: int
    sparsity: float


class PairStats(BaseModel):
    """Report written alongside a preprocessed pair directory."""

    vertices_loaded: int
    isolated_dropped: int
    n: int
    g1: GraphStats
    g2: GraphStats
    label_proportions: dict[str, float]


def pair_stats(
    d1: WeightedDigraph, d2: WeightedDigraph, full: GraphPair, reduced: GraphPair
) -> PairStats:
    """Summarize the preprocessing of ``d1``/``d2`` into ``full`` then ``reduced``."""

    def _graph(d: WeightedDigraph, before: SimpleGraph, after: SimpleGraph) -> GraphStats:
        return GraphStats(
            arcs_loaded=d.n_arcs,
            loops_loaded=d.n_loops,
            edges_before_drop=before.n_edges,
            sparsity_before_drop=sparsity(before) if before.n >= 2 else 0.0,
            edges=after.n_edges,
            sparsity=sparsity(after) if after.n >= 2 else 0.0,
        )

    return PairStats(
        vertices_loaded=full.n,
        isolated_dropped=full.n - reduced.n,
        n=reduced.n,
        g1=_graph(d1, full.g1, reduced.g1),
        g2=_graph(d2, full.g2, reduced.g2),
        label_proportions=reduced.vertices.label_proportions(),
    )
