"""Omnibus matrix construction and adjacency spectral embedding."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np
from scipy import linalg

from jointgraph.errors import EigenSolverError, InputValidationError
from jointgraph.graph.models import GraphPair

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
TIE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OmnibusMatrix:
    """The ``2n x 2n`` matrix ``[[A1, L], [L, A2]]`` with ``L = (A1 + A2) / 2``."""

    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """Check shape and symmetry."""
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.shape != (2 * self.n, 2 * self.n):
            raise InputValidationError(
                f"omnibus matrix for n={self.n} must be {2 * self.n}x{2 * self.n}"
            )
        if not np.array_equal(matrix, matrix.T):
            raise InputValidationError("omnibus matrix must be symmetric")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """Embedded coordinates and the signed eigenvalues they were scaled by."""

    coords: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray

    @property
    def rows(self) -> int:
        """Return the number of embedded points."""
        return int(self.coords.shape[0])

    @property
    def d(self) -> int:
        """Return the embedding dimension."""
        return int(self.coords.shape[1])

    def truncate(self, d: int) -> EmbeddingMatrix:
        """Keep the leading ``d`` dimensions."""
        if not 1 <= d <= self.d:
            raise InputValidationError(f"cannot truncate a {self.d}-dimensional embedding to {d}")
        return EmbeddingMatrix(self.coords[:, :d], self.eigenvalues[:d])


def omnibus(pair: GraphPair) -> OmnibusMatrix:
    """Assemble the omnibus matrix of an aligned pair."""
    a1, a2 = pair.g1.adjacency, pair.g2.adjacency
    mean = (a1 + a2) / 2.0
    return OmnibusMatrix(pair.n, np.block([[a1, mean], [mean, a2]]))


def _eigen_order(values: np.ndarray, vectors: np.ndarray) -> list[int]:
    """Order by |eigenvalue| descending, then eigenvalue, then eigenvector."""
    tol = TIE_TOL * max(1.0, float(np.abs(values).max(initial=0.0)))

    def compare(i: int, j: int) -> int:
        mi, mj = abs(values[i]), abs(values[j])
        if abs(mi - mj) > tol:
            return -1 if mi > mj else 1
        if abs(values[i] - values[j]) > tol:
            return -1 if values[i] > values[j] else 1
        vi, vj = tuple(vectors[:, i]), tuple(vectors[:, j])
        return int(vi > vj) - int(vi < vj)

    return sorted(range(values.size), key=cmp_to_key(compare))


def ase(matrix: np.ndarray | OmnibusMatrix, d: int) -> EmbeddingMatrix:
    """Embed a symmetric matrix into ``R^d``.

    Keeps the ``d`` eigenpairs of largest absolute eigenvalue and scales each
    eigenvector by ``sqrt(|eigenvalue|)``. Each eigenvector's entry of
    largest magnitude is made positive.
    """
    m = matrix.matrix if isinstance(matrix, OmnibusMatrix) else np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputValidationError(f"matrix must be square, got shape {m.shape}")
    dim = m.shape[0]
    if not 1 <= d <= dim:
        raise InputValidationError(f"embedding dimension must be in [1, {dim}], got {d}")
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(m).max()))):
        raise InputValidationError("matrix must be symmetric")
    try:
        values, vectors = linalg.eigh(m)
    except linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigendecomposition failed: {exc}") from exc

    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(dim)])
    signs[signs == 0] = 1.0
    vectors = vectors * signs

    keep = _eigen_order(values, vectors)[:d]
    kept_values = values[keep]
    kept_vectors = vectors[:, keep]

    bound = RESIDUAL_TOL * float(np.linalg.norm(m, "fro"))
    residuals = np.linalg.norm(m @ kept_vectors - kept_vectors * kept_values, axis=0)
    if residuals.size and residuals.max() > bound:
        raise EigenSolverError(
            f"eigenvector residual {residuals.max():.3e} exceeds tolerance {bound:.3e}"
        )
    logger.debug("Embedded matrix", extra={"dim": dim, "d": d, "top": float(kept_values[0])})
    return EmbeddingMatrix(kept_vectors * np.sqrt(np.abs(kept_values)), kept_values)


def split_embedding(e: EmbeddingMatrix, n: int) -> tuple[EmbeddingMatrix, EmbeddingMatrix]:
    """Split a ``2n``-row joint embedding into the rows of each graph."""
    if e.rows != 2 * n:
        raise InputValidationError(f"expected {2 * n} rows to split, got {e.rows}")
    return (
        EmbeddingMatrix(e.coords[:n], e.eigenvalues),
        EmbeddingMatrix(e.coords[n:], e.eigenvalues),
    )
