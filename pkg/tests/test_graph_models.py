"""Test the graph models module."""

import numpy as np
import pytest

from jointgraph.errors import InputValidationError
from jointgraph.graph.models import GraphPair, Matching, SimpleGraph, VertexTable, WeightedDigraph


def _table(*names: str) -> VertexTable:
    return VertexTable(tuple(names))


def test_vertex_table_rejects_duplicate_names() -> None:
    """Duplicate vertex names should be rejected."""
    with pytest.raises(InputValidationError, match="duplicate"):
        _table("a", "b", "a")


def test_vertex_table_requires_one_label_per_vertex() -> None:
    """A label list of the wrong length should be rejected."""
    with pytest.raises(InputValidationError):
        VertexTable(("a", "b"), ("motor",))


def test_vertex_table_canonical_sorts_names() -> None:
    """The canonical table should be the sorted distinct names."""
    table = VertexTable.canonical(["c", "a", "b", "a"])

    assert table.names == ("a", "b", "c")
    assert table.is_canonical
    assert table.index == {"a": 0, "b": 1, "c": 2}


def test_label_proportions_follow_class_order() -> None:
    """Label proportions should cover every class."""
    table = VertexTable(("a", "b", "c", "d"), ("motor", "sensory", "motor", "motor"))

    assert table.classes == ("motor", "sensory")
    assert table.label_proportions() == {"motor": 0.75, "sensory": 0.25}


def test_digraph_sums_duplicate_arcs() -> None:
    """Duplicate arcs should merge into one arc with the summed weight."""
    g = WeightedDigraph.from_arcs(_table("a", "b"), [0, 0], [1, 1], [1.0, 2.0])

    assert g.n_arcs == 1
    assert list(g.arcs()) == [(0, 1, 3.0)]


def test_digraph_counts_loops() -> None:
    """Loops should be kept and counted."""
    g = WeightedDigraph.from_arcs(_table("a", "b"), [0, 1], [0, 0], [5.0, 1.0])

    assert g.n_loops == 1
    assert g.n_arcs == 2


def test_digraph_rejects_negative_weights() -> None:
    """Negative weights should be rejected."""
    with pytest.raises(InputValidationError):
        WeightedDigraph.from_arcs(_table("a", "b"), [0], [1], [-1.0])


@pytest.mark.parametrize(
    "adjacency",
    [
        [[0, 1], [0, 0]],
        [[1, 0], [0, 0]],
        [[0, 2], [2, 0]],
    ],
)
def test_simple_graph_invariants(adjacency: list[list[int]]) -> None:
    """Asymmetric, looped or weighted adjacency should be rejected."""
    with pytest.raises(InputValidationError):
        SimpleGraph(np.array(adjacency), _table("a", "b"))


def test_simple_graph_is_read_only() -> None:
    """Adjacency arrays should be immutable after construction."""
    g = SimpleGraph(np.array([[0, 1], [1, 0]]), _table("a", "b"))

    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 0.0


def test_simple_graph_permuted_moves_names_with_rows() -> None:
    """Permuting should reorder names and adjacency together."""
    a = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    g = SimpleGraph(a, _table("a", "b", "c"))

    moved = g.permuted([1, 0, 2])

    assert moved.vertices.names == ("b", "a", "c")
    assert moved.degrees.tolist() == [2, 1, 1]
    assert list(moved.edges()) == [(0, 1), (0, 2)]


def test_graph_pair_requires_identical_names() -> None:
    """Pairs over different ordered names should be rejected."""
    g1 = SimpleGraph.empty(_table("a", "b"))
    g2 = SimpleGraph.empty(_table("a", "c"))

    with pytest.raises(InputValidationError, match="not aligned"):
        GraphPair(g1, g2)


def test_matching_rejects_non_bijection() -> None:
    """A repeated target index should be rejected."""
    with pytest.raises(InputValidationError):
        Matching(np.array([0, 0, 1]))


def test_matching_inverse_and_equality() -> None:
    """Inverse composed with the matching should give the identity."""
    phi = Matching(np.array([2, 0, 1]))

    assert phi.inverse() == Matching(np.array([1, 2, 0]))
    assert phi.inverse().phi[phi.phi].tolist() == [0, 1, 2]
    assert phi.fixes([]) and not phi.fixes([0])
    assert Matching.identity(3).fixes([0, 1, 2])
