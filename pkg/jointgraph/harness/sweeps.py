"""Replicated matching and classification sweeps over a vertex-aligned pair."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from jointgraph.classify import Target, embedding_error
from jointgraph.embed import EmbeddingMatrix, ase, omnibus, split_embedding
from jointgraph.errors import InputValidationError
from jointgraph.graph.models import GraphPair, Matching
from jointgraph.harness.records import (
    ClassSweepConfig,
    Experiment,
    ExperimentRecord,
    Metric,
    SgmSweepConfig,
    SummaryRow,
    loocv_marker,
)
from jointgraph.sgm import SeedSet, chance_accuracy, matching_accuracy, sgm_match
from jointgraph.synth import shuffle_nonseeds

logger = logging.getLogger(__name__)

Cell = TypeVar("Cell")


def _fan_out(
    work: Callable[[Cell], list[ExperimentRecord]],
    cells: Sequence[Cell],
    threads: int | None,
) -> list[ExperimentRecord]:
    """Evaluate every cell and return the records in canonical order."""

    def guarded(cell: Cell) -> list[ExperimentRecord]:
        try:
            return work(cell)
        except Exception:
            logger.exception("Sweep cell failed", extra={"cell": repr(cell)})
            raise

    if threads == 1 or len(cells) <= 1:
        batches = [guarded(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(guarded, cells))
    records = [record for batch in batches for record in batch]
    return sorted(records, key=ExperimentRecord.sort_key)


def draw_seeds(n: int, m: int, rng: np.random.Generator) -> SeedSet:
    """Draw ``m`` distinct seed vertices uniformly from ``range(n)``."""
    return SeedSet(tuple(sorted(int(i) for i in rng.choice(n, size=m, replace=False))))


def _sgm_cell(
    pair: GraphPair, cfg: SgmSweepConfig, m: int, replicate: int
) -> list[ExperimentRecord]:
    rng = np.random.default_rng(np.random.SeedSequence(cfg.rng_seed, spawn_key=(m, replicate)))
    seeds = draw_seeds(pair.n, m, rng)
    if cfg.shuffle:
        work, truth = shuffle_nonseeds(pair, seeds, rng)
    else:
        work, truth = pair, Matching.identity(pair.n)
    found = sgm_match(work, seeds, cfg.sgm)
    delta = matching_accuracy(found, truth, seeds)
    logger.debug("Matched replicate", extra={"m": m, "replicate": replicate, "delta": delta})
    return [
        ExperimentRecord(
            experiment=Experiment.SGM_SWEEP,
            parameter=m,
            replicate=replicate,
            metric_name=Metric.DELTA,
            value=delta,
        ),
        ExperimentRecord(
            experiment=Experiment.SGM_SWEEP,
            parameter=m,
            replicate=replicate,
            metric_name=Metric.CHANCE,
            value=chance_accuracy(pair.n, m),
        ),
    ]


def run_sgm_sweep(
    pair: GraphPair, cfg: SgmSweepConfig | None = None, threads: int | None = None
) -> list[ExperimentRecord]:
    """Measure matching accuracy for every seed count and replicate.

    Each ``(m, replicate)`` cell draws its seeds (and the relabelling of
    g2's non-seeds when ``cfg.shuffle``) from its own child of
    ``cfg.rng_seed``, so the output does not depend on ``threads``.
    """
    cfg = cfg or SgmSweepConfig()
    too_many = [m for m in cfg.m_values if m >= pair.n]
    if too_many:
        raise InputValidationError(f"seed count {too_many[0]} needs more than {pair.n} vertices")
    cells = [(m, r) for m in cfg.m_values for r in range(cfg.replicates)]
    logger.info(
        "Starting matching sweep",
        extra={"n": pair.n, "seed_counts": len(cfg.m_values), "replicates": cfg.replicates},
    )
    return _fan_out(lambda cell: _sgm_cell(pair, cfg, *cell), cells, threads)


def _class_records(
    d: int,
    target: Target,
    joint: EmbeddingMatrix,
    single: EmbeddingMatrix | None,
    labels: Sequence[str],
    cfg: ClassSweepConfig,
) -> list[ExperimentRecord]:
    marker = loocv_marker(target)
    records = [
        ExperimentRecord(
            experiment=Experiment.CLASS_SWEEP,
            parameter=d,
            replicate=marker,
            metric_name=Metric.JOINT_ERROR,
            value=embedding_error(joint.truncate(d), labels, cfg.classifier),
        )
    ]
    if single is not None and d <= single.d:
        records.append(
            ExperimentRecord(
                experiment=Experiment.CLASS_SWEEP,
                parameter=d,
                replicate=marker,
                metric_name=Metric.SINGLE_ERROR,
                value=embedding_error(single.truncate(d), labels, cfg.classifier),
            )
        )
    return records


def run_class_sweep(
    pair: GraphPair, cfg: ClassSweepConfig | None = None, threads: int | None = None
) -> list[ExperimentRecord]:
    """Compare joint and single-graph LOOCV error across embedding dimensions.

    Each embedding is computed once at the largest requested dimension and
    truncated. Dimensions above ``n`` only produce a joint record.
    """
    cfg = cfg or ClassSweepConfig()
    labels = pair.labels
    if labels is None:
        raise InputValidationError("the classification sweep needs vertex labels")
    n = pair.n
    too_large = [d for d in cfg.d_values if d > 2 * n]
    if too_large:
        raise InputValidationError(f"dimension {too_large[0]} exceeds 2n = {2 * n}")

    d_max = max(cfg.d_values)
    joint_rows = dict(zip((Target.G1, Target.G2), split_embedding(ase(omnibus(pair), d_max), n)))
    graphs = {Target.G1: pair.g1, Target.G2: pair.g2}
    single_rows = {
        target: ase(graphs[target].adjacency, min(d_max, n)) for target in cfg.targets
    }
    skipped = [d for d in cfg.d_values if d > n]
    if skipped:
        logger.warning(
            "Single-graph error skipped above n", extra={"n": n, "dimensions": skipped}
        )

    cells = [(d, target) for d in cfg.d_values for target in cfg.targets]
    logger.info(
        "Starting classification sweep",
        extra={"n": n, "dimensions": len(cfg.d_values), "classifier": cfg.classifier.kind},
    )
    return _fan_out(
        lambda cell: _class_records(
            cell[0], cell[1], joint_rows[cell[1]], single_rows[cell[1]], labels, cfg
        ),
        cells,
        threads,
    )


def summarize(records: Iterable[ExperimentRecord]) -> list[SummaryRow]:
    """Mean, sample standard deviation and standard error per metric and parameter.

    Classification records are grouped per target graph as well.
    """
    groups: dict[tuple[Experiment, int, Metric, str | None], list[float]] = defaultdict(list)
    for record in records:
        key = (record.experiment, record.parameter, record.metric_name, record.target)
        groups[key].append(record.value)

    def order(key: tuple[Experiment, int, Metric, str | None]) -> tuple[str, int, str, str]:
        return (key[0].value, key[1], key[3] or "", key[2].value)

    rows = []
    for key in sorted(groups, key=order):
        experiment, parameter, metric, target = key
        data = np.asarray(groups[key])
        std = float(data.std(ddof=1)) if data.size > 1 else 0.0
        rows.append(
            SummaryRow(
                experiment=experiment,
                parameter=parameter,
                metric_name=metric,
                target=target,
                mean=float(data.mean()),
                std=std,
                sem=std / float(np.sqrt(data.size)),
                count=int(data.size),
            )
        )
    return rows
