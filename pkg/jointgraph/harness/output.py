"""CSV and SVG rendering of sweep records."""

from __future__ import annotations

import csv
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

import matplotlib
from matplotlib.figure import Figure

from jointgraph.errors import InputValidationError
from jointgraph.harness.records import Experiment, ExperimentRecord, Metric, SummaryRow
from jointgraph.harness.sweeps import summarize

logger = logging.getLogger(__name__)

CSV_HEADER = ("experiment", "parameter", "replicate", "metric", "value")
SUMMARY_HEADER = ("experiment", "parameter", "target", "metric", "mean", "std", "sem", "count")
PlotKind = Literal["errorbar", "lines"]

_EXPECTED_KIND: dict[Experiment, PlotKind] = {
    Experiment.SGM_SWEEP: "errorbar",
    Experiment.CLASS_SWEEP: "lines",
}


def _number(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(records: Sequence[ExperimentRecord], path: str | Path) -> Path:
    """Write records sorted by experiment, parameter, replicate and metric."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in sorted(records, key=ExperimentRecord.sort_key):
            writer.writerow(
                (
                    record.experiment.value,
                    record.parameter,
                    record.replicate,
                    record.metric_name.value,
                    _number(record.value),
                )
            )
    logger.info("Wrote records", extra={"path": str(path), "rows": len(records)})
    return path


def emit_summary_csv(rows: Sequence[SummaryRow], path: str | Path) -> Path:
    """Write per-parameter replicate statistics."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            writer.writerow(
                (
                    row.experiment.value,
                    row.parameter,
                    row.target or "",
                    row.metric_name.value,
                    _number(row.mean),
                    _number(row.std),
                    _number(row.sem),
                    row.count,
                )
            )
    return path


def _series(
    rows: Sequence[SummaryRow], metric: Metric, target: str | None = None
) -> list[SummaryRow]:
    picked = [r for r in rows if r.metric_name is metric and r.target == target]
    return sorted(picked, key=lambda r: r.parameter)


def _draw_errorbar(figure: Figure, rows: Sequence[SummaryRow]) -> None:
    ax = figure.add_subplot(1, 1, 1)
    delta = _series(rows, Metric.DELTA)
    chance = _series(rows, Metric.CHANCE)
    container = ax.errorbar(
        [r.parameter for r in delta],
        [r.mean for r in delta],
        yerr=[r.std for r in delta],
        fmt="o-",
        color="black",
        capsize=3,
        label="matching accuracy",
    )
    container.lines[0].set_gid("series-delta")
    if chance:
        ax.plot(
            [r.parameter for r in chance],
            [r.mean for r in chance],
            "--",
            color="tab:brown",
            label="chance",
            gid="series-chance",
        )
    ax.set_xlabel("number of seeds m")
    ax.set_ylabel("fraction of non-seeds matched correctly")
    ax.set_ylim(0.0, 1.0)
    ax.legend(loc="upper left")


def _draw_lines(figure: Figure, rows: Sequence[SummaryRow]) -> None:
    targets = sorted({r.target for r in rows if r.target is not None})
    for position, target in enumerate(targets, start=1):
        ax = figure.add_subplot(1, len(targets), position)
        for metric, style, label in (
            (Metric.JOINT_ERROR, "-", "joint (omnibus)"),
            (Metric.SINGLE_ERROR, "--", "single graph"),
        ):
            series = _series(rows, metric, target)
            if not series:
                continue
            ax.plot(
                [r.parameter for r in series],
                [r.mean for r in series],
                style,
                label=label,
                gid=f"series-{target}-{metric.value}",
            )
        ax.set_title(f"classifying {target} vertices")
        ax.set_xlabel("embedding dimension d")
        ax.set_ylabel("leave-one-out error")
        ax.set_ylim(0.0, 1.0)
        ax.legend(loc="upper right")


def emit_plot(
    records: Sequence[ExperimentRecord], path: str | Path, kind: PlotKind | None = None
) -> Path:
    """Render one experiment's records as a deterministic SVG.

    ``errorbar`` draws the matching sweep's mean accuracy with one standard
    deviation bars next to the chance curve; ``lines`` draws joint and
    single-graph error per target graph.
    """
    if not records:
        raise InputValidationError("no records to plot")
    experiments = {record.experiment for record in records}
    if len(experiments) != 1:
        raise InputValidationError("cannot plot records of different experiments together")
    experiment = experiments.pop()
    expected = _EXPECTED_KIND[experiment]
    kind = kind or expected
    if kind != expected:
        raise InputValidationError(f"{experiment.value} records need a {expected} plot, not {kind}")

    path = Path(path)
    rows = summarize(records)
    description = (
        "Error bars show one standard deviation over replicates."
        if kind == "errorbar"
        else "Lines show leave-one-out error per embedding dimension."
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": "jointgraph", "svg.fonttype": "none"}):
        figure = Figure(figsize=(6.0 if kind == "errorbar" else 10.0, 4.0))
        if kind == "errorbar":
            _draw_errorbar(figure, rows)
        else:
            _draw_lines(figure, rows)
        figure.tight_layout()
        figure.savefig(
            path,
            format="svg",
            metadata={"Date": None, "Title": experiment.value, "Description": description},
        )
    logger.info("Wrote plot", extra={"path": str(path), "kind": kind})
    return path
