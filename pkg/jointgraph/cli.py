"""CLI entrypoints for preprocessing, synthesis and the experiment sweeps."""

import logging
from collections.abc import Sequence
from enum import Enum
from pathlib import Path
from typing import Annotated

import numpy as np
import typer

try:  # typer>=0.23 vendors click and raises its own exception classes
    from typer import _click as click
except ImportError:  # pragma: no cover - older typer uses upstream click
    import click
from pydantic import ValidationError

from jointgraph.classify import ClassifierConfig, Target
from jointgraph.config import get_settings
from jointgraph.errors import JointGraphError, ParseError
from jointgraph.graph import (
    align_pair,
    drop_isolated,
    load_edge_list,
    load_labels,
    pair_stats,
    read_pair_dir,
    write_pair_dir,
)
from jointgraph.harness import (
    ClassSweepConfig,
    SgmSweepConfig,
    emit_csv,
    emit_plot,
    emit_summary_csv,
    run_class_sweep,
    run_sgm_sweep,
    summarize,
)
from jointgraph.sgm import SgmConfig
from jointgraph.synth import SbmSpec, sample_correlated_pair

app = typer.Typer(help="Joint inference on a pair of graphs sharing a vertex set")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class ClassifierKind(str, Enum):
    """Classifier accepted by ``class-sweep``."""

    KNN = "knn"
    SVM_RBF = "svm_rbf"


class TargetChoice(str, Enum):
    """Graph whose vertices ``class-sweep`` classifies."""

    G1 = "g1"
    G2 = "g2"
    BOTH = "both"


def parse_int_list(text: str, flag: str) -> list[int]:
    """Parse ``1,2,5`` and inclusive ``a:b:step`` ranges into integers."""
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        try:
            if ":" in token:
                parts = [int(part) for part in token.split(":")]
                if len(parts) == 2:
                    parts.append(1)
                if len(parts) != 3 or parts[2] <= 0:
                    raise ValueError(token)
                start, stop, step = parts
                values.extend(range(start, stop + 1, step))
            else:
                values.append(int(token))
        except ValueError:
            raise typer.BadParameter(f"invalid list token {token!r}", param_hint=flag) from None
    if not values:
        raise typer.BadParameter(f"empty list {text!r}", param_hint=flag)
    return values


@app.callback()
def configure(
    log_level: Annotated[
        str | None,
        typer.Option("--log-level", help="Logging level (defaults to JOINTGRAPH_LOG_LEVEL)."),
    ] = None,
) -> None:
    """Joint inference on a pair of graphs sharing a vertex set."""
    level = (log_level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise typer.BadParameter(f"unknown level {level!r}", param_hint="--log-level")
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


@app.command()
def preprocess(
    edges_a: Annotated[Path, typer.Option("--edges-a", help="First graph's edge list.")],
    edges_b: Annotated[Path, typer.Option("--edges-b", help="Second graph's edge list.")],
    out_dir: Annotated[Path, typer.Option("--out-dir", help="Pair directory to write.")],
    labels: Annotated[
        Path | None, typer.Option("--labels", help="Vertex labels CSV.")
    ] = None,
) -> None:
    """Symmetrize, binarize and align two edge lists into a pair directory."""
    d1 = load_edge_list(edges_a)
    d2 = load_edge_list(edges_b)
    full = align_pair(d1, d2)
    if labels is not None:
        full = full.with_vertices(load_labels(labels, full.vertices))
    reduced, _ = drop_isolated(full)
    stats = pair_stats(d1, d2, full, reduced)
    write_pair_dir(reduced, out_dir)
    (out_dir / "stats.json").write_text(stats.model_dump_json(indent=2) + "\n", encoding="utf-8")
    typer.echo(
        f"Wrote {out_dir}: n={stats.n}, isolated dropped={stats.isolated_dropped}, "
        f"edges={stats.g1.edges}/{stats.g2.edges}"
    )


@app.command("sgm-sweep")
def sgm_sweep(
    pair_dir: Annotated[Path, typer.Option("--pair-dir", help="Preprocessed pair directory.")],
    out: Annotated[Path, typer.Option("--out", help="Records CSV to write.")],
    m_values: Annotated[
        str, typer.Option("--m-values", help="Seed counts, e.g. 0,20,40 or 0:180:20.")
    ] = "0:180:20",
    replicates: Annotated[int, typer.Option("--replicates", min=1)] = 100,
    rng_seed: Annotated[int, typer.Option("--rng-seed", min=0)] = 0,
    max_iterations: Annotated[int, typer.Option("--max-iterations", min=1)] = 20,
    tolerance: Annotated[float, typer.Option("--tolerance")] = 1e-6,
    n_init: Annotated[int, typer.Option("--n-init", min=1)] = 1,
    shuffle: Annotated[
        bool, typer.Option("--shuffle/--no-shuffle", help="Relabel g2's non-seeds per replicate.")
    ] = True,
    plot: Annotated[Path | None, typer.Option("--plot", help="Error-bar SVG to write.")] = None,
    summary: Annotated[
        Path | None, typer.Option("--summary", help="Per-m summary CSV to write.")
    ] = None,
    threads: Annotated[int | None, typer.Option("--threads", min=1)] = None,
) -> None:
    """Measure seeded matching accuracy against the number of seeds."""
    cfg = SgmSweepConfig(
        m_values=parse_int_list(m_values, "--m-values"),
        replicates=replicates,
        rng_seed=rng_seed,
        sgm=SgmConfig(
            max_iterations=max_iterations, tolerance=tolerance, rng_seed=rng_seed, n_init=n_init
        ),
        shuffle=shuffle,
    )
    pair = read_pair_dir(pair_dir)
    records = run_sgm_sweep(pair, cfg, threads=get_settings().resolved_threads(threads))
    emit_csv(records, out)
    if summary is not None:
        emit_summary_csv(summarize(records), summary)
    if plot is not None:
        emit_plot(records, plot, "errorbar")
    typer.echo(f"Wrote {len(records)} records to {out}")


@app.command("class-sweep")
def class_sweep(
    pair_dir: Annotated[Path, typer.Option("--pair-dir", help="Labelled pair directory.")],
    out: Annotated[Path, typer.Option("--out", help="Records CSV to write.")],
    d_values: Annotated[
        str, typer.Option("--d-values", help="Embedding dimensions, e.g. 2:119:3.")
    ] = "2:119:3",
    classifier: Annotated[ClassifierKind, typer.Option("--classifier")] = ClassifierKind.KNN,
    k: Annotated[int, typer.Option("--k", help="Neighbor count for knn.")] = 5,
    gamma: Annotated[float, typer.Option("--gamma", help="RBF kernel width for svm_rbf.")] = 1.0,
    c: Annotated[float, typer.Option("--c", help="Soft-margin penalty for svm_rbf.")] = 1.0,
    target: Annotated[TargetChoice, typer.Option("--target")] = TargetChoice.BOTH,
    plot: Annotated[Path | None, typer.Option("--plot", help="Line SVG to write.")] = None,
    summary: Annotated[
        Path | None, typer.Option("--summary", help="Per-d summary CSV to write.")
    ] = None,
    threads: Annotated[int | None, typer.Option("--threads", min=1)] = None,
) -> None:
    """Compare joint and single-graph classification error across dimensions."""
    targets = (
        [Target.G1, Target.G2] if target is TargetChoice.BOTH else [Target(target.value)]
    )
    cfg = ClassSweepConfig(
        d_values=parse_int_list(d_values, "--d-values"),
        classifier=ClassifierConfig(kind=classifier.value, k=k, gamma=gamma, c=c),
        targets=targets,
    )
    pair = read_pair_dir(pair_dir)
    records = run_class_sweep(pair, cfg, threads=get_settings().resolved_threads(threads))
    emit_csv(records, out)
    if summary is not None:
        emit_summary_csv(summarize(records), summary)
    if plot is not None:
        emit_plot(records, plot, "lines")
    typer.echo(f"Wrote {len(records)} records to {out}")


@app.command()
def synth(
    blocks: Annotated[str, typer.Option("--blocks", help="Block sizes, e.g. 50,50,50.")],
    probs: Annotated[Path, typer.Option("--probs", help="CSV matrix of block probabilities.")],
    out_dir: Annotated[Path, typer.Option("--out-dir", help="Pair directory to write.")],
    rho: Annotated[float, typer.Option("--rho", help="Cross-graph edge correlation.")] = 0.0,
    rng_seed: Annotated[int, typer.Option("--rng-seed", min=0)] = 0,
) -> None:
    """Sample a correlated stochastic block model pair into a pair directory."""
    try:
        matrix = np.loadtxt(probs, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ParseError(f"cannot read probability matrix: {exc}", probs) from exc
    spec = SbmSpec(
        block_sizes=parse_int_list(blocks, "--blocks"), block_probs=matrix.tolist(), rho=rho
    )
    pair = sample_correlated_pair(spec, rng_seed)
    write_pair_dir(pair, out_dir)
    typer.echo(f"Wrote {out_dir}: n={pair.n}, edges={pair.g1.n_edges}/{pair.g2.n_edges}")


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        result = command.main(
            args=None if argv is None else list(argv),
            prog_name="jointgraph",
            standalone_mode=False,
        )
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        typer.echo("Aborted", err=True)
        return 1
    except (JointGraphError, ValidationError) as exc:
        typer.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        typer.echo(f"error: {exc}", err=True)
        return 2
    return result if isinstance(result, int) else 0


def run() -> None:
    """Console entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    run()
