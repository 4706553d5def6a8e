"""Graph types shared by every inference module."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from jointgraph.errors import InputValidationError


def _frozen_array(values: np.ndarray, dtype: type | np.dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class VertexTable:
    """Ordered unique vertex names with optional class labels.

    Loaders always produce the canonical (lexicographically sorted) order;
    permuted tables only appear inside matching where seeds are moved first.
    """

    names: tuple[str, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        """Validate uniqueness and label coverage."""
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            dupes = sorted(name for name, count in Counter(self.names).items() if count > 1)
            raise InputValidationError(f"duplicate vertex names: {', '.join(dupes[:5])}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.names):
                raise InputValidationError(
                    f"{len(self.labels)} labels given for {len(self.names)} vertices"
                )
            if any(not label for label in self.labels):
                raise InputValidationError("empty label")

    @classmethod
    def canonical(cls, names: Sequence[str]) -> VertexTable:
        """Build a table over the sorted distinct names."""
        return cls(tuple(sorted(set(names))))

    @property
    def n(self) -> int:
        """Return the number of vertices."""
        return len(self.names)

    @property
    def is_canonical(self) -> bool:
        """Return whether names are in lexicographic order."""
        return list(self.names) == sorted(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        """Map each name to its position."""
        return {name: i for i, name in enumerate(self.names)}

    @property
    def classes(self) -> tuple[str, ...]:
        """Return the sorted distinct labels (empty when unlabeled)."""
        if self.labels is None:
            return ()
        return tuple(sorted(set(self.labels)))

    def with_labels(self, labels: Sequence[str] | None) -> VertexTable:
        """Return a copy carrying the given labels."""
        return VertexTable(self.names, None if labels is None else tuple(labels))

    def subset(self, keep: Sequence[int]) -> VertexTable:
        """Return the table restricted to ``keep`` in that order."""
        names = tuple(self.names[i] for i in keep)
        labels = None if self.labels is None else tuple(self.labels[i] for i in keep)
        return VertexTable(names, labels)

    def label_proportions(self) -> dict[str, float]:
        """Return the fraction of vertices carrying each label."""
        if self.labels is None or not self.labels:
            return {}
        counts = Counter(self.labels)
        return {label: counts[label] / self.n for label in self.classes}


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Weighted directed graph as loaded from an edge list.

    ``weights`` is an ``n x n`` CSR matrix; duplicate arcs are summed and
    loops are allowed.
    """

    vertices: VertexTable
    weights: sparse.csr_matrix = field(repr=False)

    def __post_init__(self) -> None:
        """Validate shape and weight signs."""
        n = self.vertices.n
        matrix = sparse.csr_matrix(self.weights, dtype=np.float64)
        if matrix.shape != (n, n):
            raise InputValidationError(
                f"weight matrix shape {matrix.shape} does not match {n} vertices"
            )
        matrix.sum_duplicates()
        matrix.sort_indices()
        if matrix.nnz and (not np.all(np.isfinite(matrix.data)) or matrix.data.min() < 0):
            raise InputValidationError("arc weights must be finite and nonnegative")
        object.__setattr__(self, "weights", matrix)

    @classmethod
    def from_arcs(
        cls,
        vertices: VertexTable,
        sources: Sequence[int],
        targets: Sequence[int],
        weights: Sequence[float],
    ) -> WeightedDigraph:
        """Build a digraph from parallel arc arrays, summing duplicates."""
        n = vertices.n
        src = np.asarray(sources, dtype=np.int64)
        dst = np.asarray(targets, dtype=np.int64)
        if src.size and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
            raise InputValidationError(f"arc endpoint outside [0, {n})")
        matrix = sparse.coo_matrix(
            (np.asarray(weights, dtype=np.float64), (src, dst)), shape=(n, n)
        ).tocsr()
        return cls(vertices, matrix)

    @property
    def n(self) -> int:
        """Return the number of vertices."""
        return self.vertices.n

    @property
    def n_arcs(self) -> int:
        """Return the number of distinct arcs, loops included."""
        return int(self.weights.nnz)

    @property
    def n_loops(self) -> int:
        """Return the number of loops."""
        return int(np.count_nonzero(self.weights.diagonal()))

    def arcs(self) -> Iterator[tuple[int, int, float]]:
        """Yield ``(source, target, weight)`` in row-major order."""
        coo = self.weights.tocoo()
        for s, t, w in zip(coo.row, coo.col, coo.data):
            yield int(s), int(t), float(w)

    def to_dense(self) -> np.ndarray:
        """Return the dense weight matrix."""
        return self.weights.toarray()


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Symmetric, binary, hollow graph over a vertex table."""

    adjacency: np.ndarray = field(repr=False)
    vertices: VertexTable

    def __post_init__(self) -> None:
        """Validate the simple-graph invariants."""
        a = _frozen_array(self.adjacency, np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputValidationError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] != self.vertices.n:
            raise InputValidationError(
                f"adjacency has {a.shape[0]} rows for {self.vertices.n} vertices"
            )
        if not np.all((a == 0) | (a == 1)):
            raise InputValidationError("adjacency entries must be 0 or 1")
        if not np.array_equal(a, a.T):
            raise InputValidationError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise InputValidationError("adjacency must be hollow")
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def empty(cls, vertices: VertexTable) -> SimpleGraph:
        """Return the edgeless graph on ``vertices``."""
        return cls(np.zeros((vertices.n, vertices.n)), vertices)

    @property
    def n(self) -> int:
        """Return the number of vertices."""
        return self.vertices.n

    @property
    def n_edges(self) -> int:
        """Return the number of undirected edges."""
        return int(self.adjacency.sum()) // 2

    @property
    def degrees(self) -> np.ndarray:
        """Return the vertex degrees."""
        return self.adjacency.sum(axis=1).astype(np.int64)

    def permuted(self, order: Sequence[int]) -> SimpleGraph:
        """Return the graph whose vertex ``i`` is this graph's ``order[i]``."""
        idx = np.asarray(order, dtype=np.int64)
        return SimpleGraph(self.adjacency[np.ix_(idx, idx)], self.vertices.subset(idx))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each undirected edge once as ``(i, j)`` with ``i < j``."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        for i, j in zip(rows, cols):
            yield int(i), int(j)


@dataclass(frozen=True, eq=False)
class GraphPair:
    """Two simple graphs over the identical ordered vertex set."""

    g1: SimpleGraph
    g2: SimpleGraph

    def __post_init__(self) -> None:
        """Check that both graphs share the ordered vertex names."""
        if self.g1.vertices.names != self.g2.vertices.names:
            raise InputValidationError("graph pair is not aligned: vertex names differ")

    @property
    def n(self) -> int:
        """Return the shared vertex count."""
        return self.g1.n

    @property
    def vertices(self) -> VertexTable:
        """Return the vertex table of the first graph."""
        return self.g1.vertices

    @property
    def labels(self) -> tuple[str, ...] | None:
        """Return the vertex labels when attached."""
        return self.g1.vertices.labels

    def with_vertices(self, vertices: VertexTable) -> GraphPair:
        """Return the pair with ``vertices`` attached to both graphs."""
        return GraphPair(
            SimpleGraph(self.g1.adjacency, vertices), SimpleGraph(self.g2.adjacency, vertices)
        )

    def with_labels(self, labels: Sequence[str] | None) -> GraphPair:
        """Return the pair with labels attached to the shared table."""
        return self.with_vertices(self.vertices.with_labels(labels))

    def permuted(self, order: Sequence[int]) -> GraphPair:
        """Apply the same vertex reordering to both graphs."""
        return GraphPair(self.g1.permuted(order), self.g2.permuted(order))


@dataclass(frozen=True)
class Matching:
    """Bijection from g1 vertex indices to g2 vertex indices."""

    phi: np.ndarray

    def __post_init__(self) -> None:
        """Check that ``phi`` is a permutation of ``range(n)``."""
        phi = _frozen_array(self.phi, np.int64)
        if phi.ndim != 1 or not np.array_equal(np.sort(phi), np.arange(phi.size)):
            raise InputValidationError("matching is not a bijection on [0, n)")
        object.__setattr__(self, "phi", phi)

    def __eq__(self, other: object) -> bool:
        """Compare matchings elementwise."""
        if not isinstance(other, Matching):
            return NotImplemented
        return bool(np.array_equal(self.phi, other.phi))

    def __hash__(self) -> int:
        """Hash the underlying permutation."""
        return hash(self.phi.tobytes())

    @classmethod
    def identity(cls, n: int) -> Matching:
        """Return the identity matching on ``n`` vertices."""
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        """Return the matching size."""
        return int(self.phi.size)

    def fixes(self, indices: Sequence[int]) -> bool:
        """Return whether every index in ``indices`` maps to itself."""
        idx = np.asarray(indices, dtype=np.int64)
        return bool(np.all(self.phi[idx] == idx))

    def inverse(self) -> Matching:
        """Return the inverse bijection."""
        inv = np.empty_like(self.phi)
        inv[self.phi] = np.arange(self.phi.size)
        return Matching(inv)
