"""Experiment sweeps and their CSV and SVG outputs."""

from jointgraph.harness.output import emit_csv, emit_plot, emit_summary_csv
from jointgraph.harness.records import (
    ClassSweepConfig,
    Experiment,
    ExperimentRecord,
    Metric,
    SgmSweepConfig,
    SummaryRow,
    loocv_marker,
)
from jointgraph.harness.sweeps import draw_seeds, run_class_sweep, run_sgm_sweep, summarize

__all__ = [
    "ClassSweepConfig",
    "Experiment",
    "ExperimentRecord",
    "Metric",
    "SgmSweepConfig",
    "SummaryRow",
    "draw_seeds",
    "emit_csv",
    "emit_plot",
    "emit_summary_csv",
    "loocv_marker",
    "run_class_sweep",
    "run_sgm_sweep",
    "summarize",
]
