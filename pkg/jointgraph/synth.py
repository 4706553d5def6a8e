"""Correlated stochastic block model pairs for desk-scale experiments."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from jointgraph.graph.models import GraphPair, Matching, SimpleGraph, VertexTable
from jointgraph.sgm import SeedSet, invert_permutation

logger = logging.getLogger(__name__)


class SbmSpec(BaseModel):
    """Block sizes, block edge probabilities and cross-graph edge correlation."""

    model_config = ConfigDict(frozen=True)

    block_sizes: list[int] = Field(min_length=1)
    block_probs: list[list[float]]
    rho: float = Field(default=0.0, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_blocks(self) -> SbmSpec:
        """Check block sizes and the probability matrix."""
        k = len(self.block_sizes)
        if any(size < 1 for size in self.block_sizes):
            raise ValueError("block sizes must be positive")
        probs = np.asarray(self.block_probs, dtype=float)
        if probs.shape != (k, k):
            raise ValueError(f"block_probs must be {k}x{k}, got shape {probs.shape}")
        if not np.all((probs >= 0) & (probs <= 1)):
            raise ValueError("block probabilities must lie in [0, 1]")
        if not np.array_equal(probs, probs.T):
            raise ValueError("block_probs must be symmetric")
        return self

    @classmethod
    def from_two_level(
        cls, block_sizes: Sequence[int], p_in: float, p_out: float, rho: float = 0.0
    ) -> SbmSpec:
        """Build a block model with ``p_in`` on the diagonal and ``p_out`` elsewhere."""
        k = len(block_sizes)
        probs = [[p_in if i == j else p_out for j in range(k)] for i in range(k)]
        return cls(block_sizes=list(block_sizes), block_probs=probs, rho=rho)

    @property
    def n(self) -> int:
        """Return the total vertex count."""
        return sum(self.block_sizes)


def vertex_names(n: int) -> tuple[str, ...]:
    """Return zero-padded names that sort in index order."""
    width = len(str(max(n - 1, 0)))
    return tuple(f"v{i:0{width}d}" for i in range(n))


def _generator(seed: np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_correlated_pair(spec: SbmSpec, rng_seed: int) -> GraphPair:
    """Sample a rho-correlated SBM pair labelled by block.

    ``A1`` edges are Bernoulli with the block probability ``p``; given
    ``A1[i, j] = a`` the ``A2`` edge is present with probability
    ``p + rho * (a - p)``.
    """
    n = spec.n
    blocks = np.repeat(np.arange(len(spec.block_sizes)), spec.block_sizes)
    probs = np.asarray(spec.block_probs, dtype=float)[blocks[:, None], blocks[None, :]]
    upper = np.triu_indices(n, k=1)
    p = probs[upper]

    first, second = np.random.SeedSequence(rng_seed).spawn(2)
    e1 = _generator(first).random(p.size) < p
    conditional = np.where(e1, 1.0 - (1.0 - spec.rho) * (1.0 - p), p * (1.0 - spec.rho))
    e2 = _generator(second).random(p.size) < conditional

    table = VertexTable(vertex_names(n), tuple(f"block{b}" for b in blocks))
    graphs = []
    for edges in (e1, e2):
        a = np.zeros((n, n))
        a[upper] = edges
        graphs.append(SimpleGraph(a + a.T, table))
    logger.debug(
        "Sampled correlated pair",
        extra={"n": n, "rho": spec.rho, "edges1": int(e1.sum()), "edges2": int(e2.sum())},
    )
    return GraphPair(graphs[0], graphs[1])


def shuffle_nonseeds(
    pair: GraphPair, seeds: SeedSet, rng: np.random.Generator
) -> tuple[GraphPair, Matching]:
    """Relabel g2's non-seed vertices at random.

    Returns the shuffled pair and the ground-truth matching from g1 to the
    relabelled g2.
    """
    seeds.check(pair.n)
    nonseeds = seeds.nonseeds(pair.n)
    sigma = np.arange(pair.n)
    sigma[nonseeds] = rng.permutation(nonseeds)
    shuffled = SimpleGraph(pair.g2.adjacency[np.ix_(sigma, sigma)], pair.vertices)
    return GraphPair(pair.g1, shuffled), Matching(invert_permutation(sigma))
