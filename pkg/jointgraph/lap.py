"""Exact linear assignment with a deterministic tie-break.

The optimum comes from SciPy's shortest augmenting path solver. Dual
potentials are then recovered from the optimal assignment and the
tight-edge graph is walked row by row so that, among all co-optimal
permutations, the lexicographically smallest one is returned.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import sparse
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csgraph

from jointgraph.errors import InputValidationError

logger = logging.getLogger(__name__)

TIGHT_TOL = 1e-9
BRUTE_FORCE_MAX_K = 8


class Sense(str, Enum):
    """Optimization direction."""

    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """Square matrix of finite assignment costs."""

    costs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """Validate shape and finiteness."""
        costs = np.array(self.costs, dtype=np.float64, copy=True)
        if costs.ndim != 2 or costs.shape[0] != costs.shape[1]:
            raise InputValidationError(f"cost matrix must be square, got shape {costs.shape}")
        if costs.shape[0] < 1:
            raise InputValidationError("cost matrix must have k >= 1")
        if not np.all(np.isfinite(costs)):
            raise InputValidationError("cost matrix has a non-finite entry")
        costs.setflags(write=False)
        object.__setattr__(self, "costs", costs)

    @property
    def k(self) -> int:
        """Return the dimension."""
        return int(self.costs.shape[0])


@dataclass(frozen=True, eq=False)
class Assignment:
    """Optimal permutation with its total cost."""

    perm: np.ndarray
    cost: float

    def as_matrix(self) -> np.ndarray:
        """Return the permutation matrix with ones at ``(i, perm[i])``."""
        return np.eye(self.perm.size)[self.perm]


def _dual_potentials(work: np.ndarray, perm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Recover row and column potentials certifying ``perm`` as a minimum.

    Bellman-Ford over columns, where moving row ``r`` from its column to
    column ``j`` costs ``work[r, j] - work[r, perm[r]]``.
    """
    k = work.shape[0]
    matched = work[np.arange(k), perm]
    lengths = work - matched[:, None]
    dist = np.zeros(k)
    for _ in range(k + 1):
        relaxed = np.minimum(dist, (dist[perm][:, None] + lengths).min(axis=0))
        if np.array_equal(relaxed, dist):
            break
        dist = relaxed
    return matched - dist[perm], dist


def _lexicographic_optimum(work: np.ndarray, perm: np.ndarray) -> np.ndarray:
    k = work.shape[0]
    if k == 1:
        return perm
    u, v = _dual_potentials(work, perm)
    scale = max(1.0, float(np.abs(work).max()))
    tight = (work - u[:, None] - v[None, :]) <= TIGHT_TOL * scale
    tight[np.arange(k), perm] = True

    perm = perm.copy()
    owner = np.empty(k, dtype=np.int64)
    owner[perm] = np.arange(k)
    free = np.ones(k, dtype=bool)
    for i in range(k):
        target = int(perm[i])
        candidates = np.flatnonzero(tight[i, :target] & free[:target])
        if candidates.size:
            # Column a -> b when the row holding a could move to b.
            moves = tight[owner] & free[None, :] & free[:, None]
            np.fill_diagonal(moves, False)
            order, pred = csgraph.breadth_first_order(
                sparse.csr_matrix(moves.T), target, directed=True, return_predecessors=True
            )
            reachable = np.zeros(k, dtype=bool)
            reachable[order] = True
            hits = candidates[reachable[candidates]]
            if hits.size:
                column = int(hits[0])
                current = column
                while current != target:
                    following = int(pred[current])
                    perm[owner[current]] = following
                    current = following
                perm[i] = column
                owner[perm] = np.arange(k)
                logger.debug("Rotated tie", extra={"row": i, "from_col": target, "to_col": column})
        free[perm[i]] = False
    return perm


def _as_cost_matrix(c: CostMatrix | np.ndarray) -> CostMatrix:
    return c if isinstance(c, CostMatrix) else CostMatrix(np.asarray(c))


def solve_lap(c: CostMatrix | np.ndarray, sense: Sense | str = Sense.MINIMIZE) -> Assignment:
    """Solve the square linear assignment problem exactly.

    Among co-optimal permutations the lexicographically smallest ``perm``
    array is returned.
    """
    costs = _as_cost_matrix(c).costs
    work = costs if Sense(sense) is Sense.MINIMIZE else -costs
    _, cols = linear_sum_assignment(work)
    perm = _lexicographic_optimum(work, cols.astype(np.int64))
    perm.setflags(write=False)
    return Assignment(perm=perm, cost=float(costs[np.arange(perm.size), perm].sum()))


def brute_force_lap(c: CostMatrix | np.ndarray, sense: Sense | str = Sense.MINIMIZE) -> Assignment:
    """Enumerate every permutation; the first optimum in lexicographic order wins."""
    costs = _as_cost_matrix(c).costs
    k = costs.shape[0]
    if k > BRUTE_FORCE_MAX_K:
        raise InputValidationError(f"brute force limited to k <= {BRUTE_FORCE_MAX_K}, got {k}")
    sign = 1.0 if Sense(sense) is Sense.MINIMIZE else -1.0
    rows = np.arange(k)
    best: tuple[float, np.ndarray] | None = None
    for candidate in itertools.permutations(range(k)):
        perm = np.array(candidate, dtype=np.int64)
        total = float(costs[rows, perm].sum())
        if best is None or sign * total < sign * best[0]:
            best = (total, perm)
    assert best is not None
    return Assignment(perm=best[1], cost=best[0])
