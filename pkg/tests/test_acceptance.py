"""Desk-scale end-to-end checks of the matching and classification experiments.

The connectome checks run only when ``JOINTGRAPH_CONNECTOME_DIR`` points at a
directory holding ``chemical.csv``, ``gap.csv`` and ``labels.csv``.
"""

import os
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import binomtest

from jointgraph.classify import ClassifierConfig, Target
from jointgraph.graph import align_pair, drop_isolated, load_edge_list, load_labels
from jointgraph.harness import (
    ClassSweepConfig,
    Metric,
    SgmSweepConfig,
    run_class_sweep,
    run_sgm_sweep,
    summarize,
)
from jointgraph.sgm import chance_accuracy
from jointgraph.synth import SbmSpec, sample_correlated_pair

CONNECTOME_DIR = os.environ.get("JOINTGRAPH_CONNECTOME_DIR")
needs_connectome = pytest.mark.skipif(
    not CONNECTOME_DIR, reason="JOINTGRAPH_CONNECTOME_DIR is not set"
)


def _delta_summary(records: list) -> dict[int, tuple[float, float]]:
    return {
        row.parameter: (row.mean, row.sem)
        for row in summarize(records)
        if row.metric_name is Metric.DELTA
    }


def test_matching_accuracy_grows_with_seeds() -> None:
    """Accuracy should not fall as seeds are added and should beat chance tenfold."""
    spec = SbmSpec.from_two_level([50, 50, 50], 0.3, 0.1, rho=0.9)
    pair = sample_correlated_pair(spec, 2024)
    cfg = SgmSweepConfig(m_values=[0, 10, 20, 40, 80], replicates=20, rng_seed=5)

    summary = _delta_summary(run_sgm_sweep(pair, cfg))

    m_values = sorted(summary)
    for low, high in zip(m_values, m_values[1:]):
        (mean_low, sem_low), (mean_high, sem_high) = summary[low], summary[high]
        assert mean_high >= mean_low - max(sem_low, sem_high)
    assert summary[80][0] >= 10 * chance_accuracy(150, 80)


def test_joint_classification_beats_single_graph() -> None:
    """Embedding both graphs jointly should lower the leave-one-out error."""
    spec = SbmSpec.from_two_level([50, 50, 50], 0.3, 0.1, rho=0.9)
    cfg = ClassSweepConfig(d_values=[3], classifier=ClassifierConfig(k=5), targets=[Target.G2])
    differences = []
    for replicate in range(50):
        records = run_class_sweep(sample_correlated_pair(spec, 100 + replicate), cfg)
        values = {r.metric_name: r.value for r in records}
        differences.append(values[Metric.SINGLE_ERROR] - values[Metric.JOINT_ERROR])

    wins = sum(1 for d in differences if d > 0)
    losses = sum(1 for d in differences if d < 0)
    assert np.mean(differences) > 0
    assert wins > losses
    assert binomtest(wins, wins + losses, 0.5, alternative="greater").pvalue < 0.05


@pytest.fixture(scope="module")
def connectome() -> dict:
    """Load and preprocess the connectome pair once."""
    root = Path(CONNECTOME_DIR or ".")
    chemical = load_edge_list(root / "chemical.csv")
    gap = load_edge_list(root / "gap.csv")
    full = align_pair(chemical, gap)
    full = full.with_vertices(load_labels(root / "labels.csv", full.vertices))
    reduced, _ = drop_isolated(full)
    return {"chemical": chemical, "full": full, "reduced": reduced}


@needs_connectome
def test_connectome_counts(connectome: dict) -> None:
    """Preprocessing should reproduce the published vertex and edge counts."""
    assert connectome["chemical"].n_arcs == 2194
    assert connectome["full"].n == 279
    assert connectome["full"].g2.n_edges == 514
    assert connectome["reduced"].n == 253
    proportions = connectome["reduced"].vertices.label_proportions()
    assert sorted(round(100 * p, 2) for p in proportions.values()) == pytest.approx(
        [27.96, 29.75, 42.29], abs=0.01
    )


@needs_connectome
def test_connectome_matching_beats_chance(connectome: dict) -> None:
    """Mean accuracy should exceed chance at every nonzero seed count."""
    pair = connectome["reduced"]
    cfg = SgmSweepConfig(m_values=list(range(20, 181, 20)), replicates=5)

    summary = _delta_summary(run_sgm_sweep(pair, cfg))

    for m, (mean, _) in summary.items():
        assert mean > chance_accuracy(pair.n, m)


@needs_connectome
def test_connectome_joint_beats_single_for_chemical(connectome: dict) -> None:
    """Joint error should be below single-graph error at every swept dimension."""
    cfg = ClassSweepConfig(targets=[Target.G1])

    records = run_class_sweep(connectome["reduced"], cfg)

    by_d: dict[int, dict[Metric, float]] = {}
    for record in records:
        by_d.setdefault(record.parameter, {})[record.metric_name] = record.value
    for d, values in by_d.items():
        assert values[Metric.JOINT_ERROR] < values[Metric.SINGLE_ERROR], d
