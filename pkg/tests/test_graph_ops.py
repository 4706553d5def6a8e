"""Test the graph ops module."""

import numpy as np
import pytest

from jointgraph.errors import DegenerateGraphError, InputValidationError
from jointgraph.graph.models import GraphPair, Matching, SimpleGraph, VertexTable, WeightedDigraph
from jointgraph.graph.ops import (
    align_pair,
    as_digraph,
    drop_isolated,
    edge_disagreements,
    pair_stats,
    preprocess,
    reindex,
    sparsity,
    union_vertices,
)


def _names(n: int) -> VertexTable:
    return VertexTable(tuple("abcdefghij"[:n]))


def _graph(n: int, edges: list[tuple[int, int]]) -> SimpleGraph:
    a = np.zeros((n, n))
    for i, j in edges:
        a[i, j] = a[j, i] = 1.0
    return SimpleGraph(a, _names(n))


def _random_digraph(rng: np.random.Generator, n: int) -> WeightedDigraph:
    weights = rng.integers(0, 3, size=(n, n)) * (rng.random((n, n)) < 0.3)
    rows, cols = np.nonzero(weights)
    return WeightedDigraph.from_arcs(_names(n), rows, cols, weights[rows, cols])


def test_preprocess_symmetrizes_single_arc() -> None:
    """A single arc should become an undirected edge."""
    g = WeightedDigraph.from_arcs(_names(2), [0], [1], [2.0])

    a = preprocess(g).adjacency

    assert a.tolist() == [[0.0, 1.0], [1.0, 0.0]]


def test_preprocess_drops_loops() -> None:
    """A loop-only digraph should become the empty graph."""
    g = WeightedDigraph.from_arcs(_names(2), [0], [0], [5.0])

    assert preprocess(g).n_edges == 0


def test_preprocess_ignores_zero_weight_arcs() -> None:
    """Zero-weight arcs should not become edges."""
    g = WeightedDigraph.from_arcs(_names(3), [0, 1], [1, 2], [0.0, 1.0])

    assert list(preprocess(g).edges()) == [(1, 2)]


def test_preprocess_is_idempotent_on_random_digraphs() -> None:
    """Preprocessing a preprocessed graph should change nothing."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        once = preprocess(_random_digraph(rng, 8))
        twice = preprocess(as_digraph(once))

        assert np.array_equal(once.adjacency, twice.adjacency)


def test_union_and_reindex_align_two_digraphs() -> None:
    """Digraphs over different names should align on the sorted union."""
    d1 = WeightedDigraph.from_arcs(VertexTable(("a", "c")), [0], [1], [1.0])
    d2 = WeightedDigraph.from_arcs(VertexTable(("b", "c")), [1], [0], [1.0])

    table = union_vertices(d1.vertices, d2.vertices)
    moved = reindex(d1, table)
    pair = align_pair(d1, d2)

    assert table.names == ("a", "b", "c")
    assert list(moved.arcs()) == [(0, 2, 1.0)]
    assert pair.vertices.names == ("a", "b", "c")
    assert list(pair.g1.edges()) == [(0, 2)]
    assert list(pair.g2.edges()) == [(1, 2)]


def test_reindex_rejects_missing_names() -> None:
    """Reindexing onto a table lacking a name should fail."""
    d = WeightedDigraph.from_arcs(VertexTable(("a", "z")), [0], [1], [1.0])

    with pytest.raises(InputValidationError):
        reindex(d, VertexTable(("a", "b")))


def test_drop_isolated_removes_vertex_isolated_in_one_graph() -> None:
    """A vertex isolated in g2 only should vanish from both graphs."""
    g1 = _graph(3, [(0, 1), (1, 2)])
    g2 = _graph(3, [(0, 1)])

    reduced, index_map = drop_isolated(GraphPair(g1, g2))

    assert reduced.vertices.names == ("a", "b")
    assert index_map == {0: 0, 1: 1}
    assert reduced.g1.n_edges == 1


def test_drop_isolated_without_isolates_is_identity() -> None:
    """A pair without isolates should come back unchanged."""
    g = _graph(3, [(0, 1), (1, 2)])

    reduced, index_map = drop_isolated(GraphPair(g, g))

    assert reduced.n == 3
    assert index_map == {0: 0, 1: 1, 2: 2}


def test_drop_isolated_rejects_empty_result() -> None:
    """Dropping every vertex should raise a degenerate-graph error."""
    g = SimpleGraph.empty(_names(3))

    with pytest.raises(DegenerateGraphError):
        drop_isolated(GraphPair(g, g))


def test_sparsity_examples() -> None:
    """Sparsity should be edges over vertex pairs."""
    assert sparsity(_graph(3, [(0, 1), (1, 2), (0, 2)])) == 1.0
    assert sparsity(SimpleGraph.empty(_names(5))) == 0.0
    assert sparsity(_graph(4, [(0, 1)])) == pytest.approx(1 / 6)


def test_sparsity_of_complement() -> None:
    """Sparsity of the complement should be one minus the sparsity."""
    g = _graph(5, [(0, 1), (2, 3), (1, 4)])
    complement = SimpleGraph(1.0 - g.adjacency - np.eye(5), g.vertices)

    assert sparsity(complement) == pytest.approx(1.0 - sparsity(g))


def test_sparsity_needs_two_vertices() -> None:
    """A single vertex has no pairs."""
    with pytest.raises(InputValidationError):
        sparsity(SimpleGraph.empty(_names(1)))


def test_edge_disagreements_examples() -> None:
    """Disagreements should count differing vertex pairs."""
    path = _graph(3, [(0, 1), (1, 2)])
    triangle = _graph(3, [(0, 1), (1, 2), (0, 2)])
    empty = SimpleGraph.empty(_names(3))

    assert edge_disagreements(path, path, Matching.identity(3)) == 0
    assert edge_disagreements(path, path, Matching(np.array([2, 1, 0]))) == 0
    assert edge_disagreements(triangle, empty, Matching(np.array([1, 2, 0]))) == 3


def test_edge_disagreements_invariant_under_joint_relabelling() -> None:
    """Relabelling both graphs and conjugating the matching should not change the count."""
    rng = np.random.default_rng(3)
    g1 = preprocess(_random_digraph(rng, 7))
    g2 = preprocess(_random_digraph(rng, 7))
    phi = Matching(rng.permutation(7))
    sigma = rng.permutation(7)
    inverse = np.argsort(sigma)

    moved = Matching(inverse[phi.phi[sigma]])

    assert edge_disagreements(g1.permuted(sigma), g2.permuted(sigma), moved) == (
        edge_disagreements(g1, g2, phi)
    )


def test_edge_disagreements_rejects_size_mismatch() -> None:
    """Graphs and matching of different sizes should be rejected."""
    with pytest.raises(InputValidationError):
        edge_disagreements(_graph(3, []), _graph(3, []), Matching.identity(2))


def test_pair_stats_reports_counts() -> None:
    """The stats report should cover loads, drops and final sizes."""
    d1 = WeightedDigraph.from_arcs(_names(3), [0, 1, 2], [1, 2, 2], [1.0, 1.0, 4.0])
    d2 = WeightedDigraph.from_arcs(_names(3), [0], [1], [1.0])
    full = align_pair(d1, d2)
    reduced, _ = drop_isolated(full)

    stats = pair_stats(d1, d2, full, reduced)

    assert stats.vertices_loaded == 3
    assert stats.isolated_dropped == 1
    assert stats.n == 2
    assert stats.g1.arcs_loaded == 3
    assert stats.g1.loops_loaded == 1
    assert stats.g1.edges_before_drop == 2
    assert stats.g1.edges == 1
    assert stats.g2.sparsity == 1.0
