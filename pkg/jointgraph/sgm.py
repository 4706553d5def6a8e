"""Seeded graph matching by Frank-Wolfe over doubly stochastic matrices."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from jointgraph.errors import InputValidationError
from jointgraph.graph.models import GraphPair, Matching
from jointgraph.lap import Sense, solve_lap

logger = logging.getLogger(__name__)

__all__ = [
    "DoublyStochastic",
    "FrankWolfeRun",
    "Matching",
    "SeedSet",
    "SgmConfig",
    "SgmResult",
    "chance_accuracy",
    "invert_permutation",
    "matching_accuracy",
    "reorder_seeds_first",
    "sgm_match",
    "sgm_solve",
    "sinkhorn",
]

MIN_STEP = 1e-12
NONNEGATIVE_TOL = 1e-12
MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class SeedSet:
    """Vertices whose correspondence across the pair is known."""

    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Validate distinctness and sign."""
        indices = tuple(int(i) for i in self.indices)
        if len(set(indices)) != len(indices):
            raise InputValidationError("seed indices must be distinct")
        if any(i < 0 for i in indices):
            raise InputValidationError("seed indices must be nonnegative")
        object.__setattr__(self, "indices", indices)

    @property
    def m(self) -> int:
        """Return the number of seeds."""
        return len(self.indices)

    def check(self, n: int) -> None:
        """Raise unless the seeds are valid for a graph on ``n`` vertices."""
        if self.m >= n:
            raise InputValidationError(f"need fewer seeds than vertices, got m={self.m}, n={n}")
        out_of_range = [i for i in self.indices if i >= n]
        if out_of_range:
            raise InputValidationError(f"seed index {out_of_range[0]} outside [0, {n})")

    def nonseeds(self, n: int) -> np.ndarray:
        """Return the non-seed indices in ascending order."""
        mask = np.ones(n, dtype=bool)
        mask[list(self.indices)] = False
        return np.flatnonzero(mask)


@dataclass(frozen=True, eq=False)
class DoublyStochastic:
    """Nonnegative square matrix with unit row and column sums."""

    p: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        """Check nonnegativity and marginals within numerical tolerance."""
        p = np.array(self.p, dtype=np.float64, copy=True)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise InputValidationError(f"doubly stochastic matrix must be square, got {p.shape}")
        if p.size and p.min() < -NONNEGATIVE_TOL:
            raise InputValidationError(f"negative entry {p.min():.3e}")
        rows = np.abs(p.sum(axis=1) - 1.0).max(initial=0.0)
        cols = np.abs(p.sum(axis=0) - 1.0).max(initial=0.0)
        if max(rows, cols) > MARGINAL_TOL:
            raise InputValidationError(f"marginals deviate from 1 by {max(rows, cols):.3e}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @classmethod
    def barycenter(cls, k: int) -> DoublyStochastic:
        """Return the uniform matrix ``J / k``."""
        return cls(np.full((k, k), 1.0 / k))

    @property
    def k(self) -> int:
        """Return the dimension."""
        return int(self.p.shape[0])


class SgmConfig(BaseModel):
    """Frank-Wolfe settings for seeded graph matching."""

    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default=20, ge=1)
    tolerance: float = Field(default=1e-6, gt=0)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    init: Literal["barycenter", "randomized"] = "barycenter"
    n_init: int = Field(default=1, ge=1)


@dataclass(frozen=True, eq=False)
class FrankWolfeRun:
    """Trace of one Frank-Wolfe start.

    ``objectives`` holds the relaxed objective (negated seeded trace, lower
    is better) for the initial point and after every accepted step.
    """

    matching: Matching
    disagreements: int
    objectives: tuple[float, ...]
    step_sizes: tuple[float, ...]
    iterations: int
    iterates: tuple[DoublyStochastic, ...] = ()


@dataclass(frozen=True, eq=False)
class SgmResult:
    """Chosen matching plus every examined Frank-Wolfe run.

    ``winner`` indexes ``runs``; ``-1`` means the identity-on-nonseeds
    candidate had strictly fewer disagreements.
    """

    matching: Matching
    disagreements: int
    runs: tuple[FrankWolfeRun, ...]
    winner: int


def invert_permutation(perm: Sequence[int] | np.ndarray) -> np.ndarray:
    """Return the inverse of a permutation array."""
    perm = np.asarray(perm, dtype=np.int64)
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.size)
    return inverse


def reorder_seeds_first(pair: GraphPair, seeds: SeedSet) -> tuple[GraphPair, np.ndarray]:
    """Permute both graphs so the seeds occupy positions ``0..m-1`` in order.

    Returns the reordered pair and ``order`` where new vertex ``p`` is old
    vertex ``order[p]``; ``invert_permutation(order)`` undoes it.
    """
    seeds.check(pair.n)
    order = np.concatenate(
        [np.asarray(seeds.indices, dtype=np.int64), seeds.nonseeds(pair.n)]
    ).astype(np.int64)
    return pair.permuted(order), order


def sinkhorn(matrix: np.ndarray, tol: float = 1e-13, max_iter: int = 10_000) -> np.ndarray:
    """Balance a positive matrix to doubly stochastic by alternate scaling."""
    p = np.array(matrix, dtype=np.float64, copy=True)
    if p.size and p.min() <= 0:
        raise InputValidationError("sinkhorn needs a strictly positive matrix")
    for _ in range(max_iter):
        p /= p.sum(axis=1, keepdims=True)
        p /= p.sum(axis=0, keepdims=True)
        if np.abs(p.sum(axis=1) - 1.0).max() < tol:
            break
    return p


def _split(x: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return x[:m, m:], x[m:, :m], x[m:, m:]


def _seeded_trace(a22: np.ndarray, b22: np.ndarray, linear: np.ndarray, p: np.ndarray) -> float:
    return float(((a22 @ p @ b22.T) * p).sum() + (linear * p).sum())


def _frank_wolfe(
    a22: np.ndarray,
    b22: np.ndarray,
    linear: np.ndarray,
    start: np.ndarray,
    cfg: SgmConfig,
    record_iterates: bool,
) -> tuple[np.ndarray, list[float], list[float], int, list[DoublyStochastic]]:
    """Maximize the seeded trace objective from ``start``."""
    k = start.shape[0]
    eye = np.eye(k)
    p = start
    value = _seeded_trace(a22, b22, linear, p)
    objectives = [-value]
    steps: list[float] = []
    iterates = [DoublyStochastic(p)] if record_iterates else []
    iteration = 0
    for iteration in range(1, cfg.max_iterations + 1):
        grad = a22 @ p @ b22.T + a22.T @ p @ b22 + linear
        q = eye[solve_lap(grad, Sense.MAXIMIZE).perm]
        r = q - p
        # f(p + alpha r) = f(p) + b alpha + a alpha^2
        a = float(((a22 @ r @ b22.T) * r).sum())
        b = float((grad * r).sum())
        if a < 0:
            alpha = min(max(-b / (2.0 * a), 0.0), 1.0)
        else:
            alpha = 1.0 if a + b > 0 else 0.0
        logger.debug("Frank-Wolfe step", extra={"iteration": iteration, "alpha": alpha})
        if alpha < MIN_STEP:
            break
        p = q if alpha == 1.0 else p + alpha * r
        new_value = _seeded_trace(a22, b22, linear, p)
        objectives.append(-new_value)
        steps.append(alpha)
        if record_iterates:
            iterates.append(DoublyStochastic(p))
        change = abs(new_value - value) / max(abs(value), np.finfo(float).tiny)
        value = new_value
        if change < cfg.tolerance:
            break
    return p, objectives, steps, iteration, iterates


def _start(kind: str, k: int, rng: np.random.Generator) -> np.ndarray:
    barycenter = np.full((k, k), 1.0 / k)
    if kind == "barycenter":
        return barycenter
    return (barycenter + sinkhorn(1.0 - rng.random((k, k)))) / 2.0


def _disagreements(a: np.ndarray, b: np.ndarray, psi: np.ndarray) -> int:
    return int(np.abs(a - b[np.ix_(psi, psi)]).sum()) // 2


def sgm_solve(
    pair: GraphPair,
    seeds: SeedSet,
    cfg: SgmConfig | None = None,
    record_iterates: bool = False,
) -> SgmResult:
    """Run seeded Frank-Wolfe matching and return the full trace."""
    cfg = cfg or SgmConfig()
    reordered, order = reorder_seeds_first(pair, seeds)
    n, m = pair.n, seeds.m
    k = n - m
    a = reordered.g1.adjacency
    b = reordered.g2.adjacency
    a12, a21, a22 = _split(a, m)
    b12, b21, b22 = _split(b, m)
    linear = a21 @ b21.T + a12.T @ b12

    runs: list[FrankWolfeRun] = []
    for index in range(cfg.n_init):
        kind = cfg.init if index == 0 else "randomized"
        rng = np.random.default_rng(np.random.SeedSequence(cfg.rng_seed, spawn_key=(index,)))
        p, objectives, steps, iterations, iterates = _frank_wolfe(
            a22, b22, linear, _start(kind, k, rng), cfg, record_iterates
        )
        cols = solve_lap(p, Sense.MAXIMIZE).perm
        psi = np.concatenate([np.arange(m), m + cols])
        phi = np.empty(n, dtype=np.int64)
        phi[order] = order[psi]
        runs.append(
            FrankWolfeRun(
                matching=Matching(phi),
                disagreements=_disagreements(a, b, psi),
                objectives=tuple(objectives),
                step_sizes=tuple(steps),
                iterations=iterations,
                iterates=tuple(iterates),
            )
        )

    winner = min(range(len(runs)), key=lambda i: (runs[i].disagreements, i))
    best = runs[winner]
    identity_count = _disagreements(a, b, np.arange(n))
    matching, count = best.matching, best.disagreements
    if identity_count < count:
        winner, matching, count = -1, Matching.identity(n), identity_count
    logger.debug(
        "Seeded matching finished",
        extra={"n": n, "m": m, "disagreements": count, "winner": winner},
    )
    return SgmResult(matching=matching, disagreements=count, runs=tuple(runs), winner=winner)


def sgm_match(pair: GraphPair, seeds: SeedSet, cfg: SgmConfig | None = None) -> Matching:
    """Return a seed-fixing matching minimizing edge disagreements."""
    return sgm_solve(pair, seeds, cfg).matching


def matching_accuracy(found: Matching, truth: Matching, seeds: SeedSet) -> float:
    """Fraction of non-seed vertices matched as in ``truth``."""
    if found.n != truth.n:
        raise InputValidationError(f"matching sizes differ: {found.n} vs {truth.n}")
    n = found.n
    if seeds.m >= n:
        raise InputValidationError("accuracy is undefined without non-seed vertices")
    seeds.check(n)
    if not (found.fixes(seeds.indices) and truth.fixes(seeds.indices)):
        raise InputValidationError("both matchings must fix every seed")
    nonseeds = seeds.nonseeds(n)
    return float(np.count_nonzero(found.phi[nonseeds] == truth.phi[nonseeds])) / nonseeds.size


def chance_accuracy(n: int, m: int) -> float:
    """Expected accuracy of a uniformly random non-seed alignment."""
    if m < 0 or m >= n:
        raise InputValidationError(f"need 0 <= m < n, got m={m}, n={n}")
    return 1.0 / (n - m)
