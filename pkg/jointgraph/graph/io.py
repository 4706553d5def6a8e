"""Edge-list, label and pair-directory file formats."""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterator
from pathlib import Path
from typing import Any, TextIO

from jointgraph.errors import InputValidationError, ManifestMismatchError, ParseError
from jointgraph.graph.models import GraphPair, VertexTable, WeightedDigraph
from jointgraph.graph.ops import preprocess, reindex

logger = logging.getLogger(__name__)

EDGE_HEADER = ("source", "target", "weight")
LABEL_HEADER = ("vertex", "label")
MANIFEST_MARKER = "# jointgraph pair manifest"


def _rows(path: Path, header: tuple[str, ...]) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, fields)`` after checking the header row."""
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        seen_header = False
        for row in reader:
            fields = [field.strip() for field in row]
            if not any(fields):
                continue
            if not seen_header:
                if tuple(name.lower() for name in fields) != header:
                    raise ParseError(
                        f"expected header {','.join(header)!r}, got {','.join(fields)!r}",
                        path,
                        reader.line_num,
                    )
                seen_header = True
                continue
            if len(fields) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(fields)}", path, reader.line_num
                )
            yield reader.line_num, fields
        if not seen_header:
            raise ParseError(f"missing header {','.join(header)!r}", path, 1)


def _read_arcs(path: Path) -> list[tuple[str, str, float]]:
    arcs: list[tuple[str, str, float]] = []
    for line, (source, target, raw_weight) in _rows(path, EDGE_HEADER):
        if not source or not target:
            raise ParseError("empty vertex name", path, line)
        try:
            weight = float(raw_weight)
        except ValueError:
            raise ParseError(f"weight {raw_weight!r} is not a number", path, line) from None
        if not math.isfinite(weight):
            raise ParseError(f"weight {raw_weight!r} is not finite", path, line)
        if weight < 0:
            raise InputValidationError(f"{path}:{line}: negative weight {weight}")
        arcs.append((source, target, weight))
    return arcs


def load_edge_list(
    path: str | Path, fmt: str = "csv", vertices: VertexTable | None = None
) -> WeightedDigraph:
    """Load a ``source,target,weight`` edge list.

    Without ``vertices`` the table is the sorted union of names in the file.
    With it, the digraph is indexed against that table and unknown names are
    rejected.
    """
    if fmt != "csv":
        raise InputValidationError(f"unsupported edge-list format {fmt!r}")
    path = Path(path)
    arcs = _read_arcs(path)
    table = vertices
    if table is None:
        table = VertexTable.canonical([name for s, t, _ in arcs for name in (s, t)])
    index = table.index
    for source, target, _ in arcs:
        for name in (source, target):
            if name not in index:
                raise InputValidationError(f"{path}: vertex {name!r} is not in the vertex table")
    digraph = WeightedDigraph.from_arcs(
        table,
        [index[s] for s, _, _ in arcs],
        [index[t] for _, t, _ in arcs],
        [w for _, _, w in arcs],
    )
    logger.info(
        "Loaded edge list",
        extra={"path": str(path), "vertices": digraph.n, "arcs": digraph.n_arcs},
    )
    return digraph


def _read_labels(path: Path) -> dict[str, str]:
    labels: dict[str, str] = {}
    for line, (name, label) in _rows(path, LABEL_HEADER):
        if not name:
            raise ParseError("empty vertex name", path, line)
        if not label:
            raise ParseError(f"empty label for vertex {name!r}", path, line)
        if name in labels:
            raise ParseError(f"duplicate label assignment for vertex {name!r}", path, line)
        labels[name] = label
    return labels


def load_labels(path: str | Path, vertices: VertexTable) -> VertexTable:
    """Attach the labels in ``path`` to ``vertices``.

    Every labelled name must exist in the table and every vertex must end up
    with exactly one label.
    """
    path = Path(path)
    labels = _read_labels(path)
    unknown = sorted(set(labels) - set(vertices.names))
    if unknown:
        raise InputValidationError(f"{path}: vertex {unknown[0]!r} is not in the vertex table")
    missing = [name for name in vertices.names if name not in labels]
    if missing:
        raise InputValidationError(f"{path}: vertex {missing[0]!r} has no label")
    return vertices.with_labels([labels[name] for name in vertices.names])


def _writer(handle: TextIO) -> Any:
    return csv.writer(handle, lineterminator="\n")


def write_pair_dir(pair: GraphPair, path: str | Path) -> Path:
    """Write ``pair`` as ``a1.csv``, ``a2.csv``, ``labels.csv`` and ``meta.txt``."""
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    names = pair.vertices.names
    for filename, graph in (("a1.csv", pair.g1), ("a2.csv", pair.g2)):
        with (out / filename).open("w", encoding="utf-8", newline="") as handle:
            writer = _writer(handle)
            writer.writerow(EDGE_HEADER)
            for i, j in graph.edges():
                a, b = sorted((names[i], names[j]))
                writer.writerow((a, b, 1))
    if pair.labels is not None:
        with (out / "labels.csv").open("w", encoding="utf-8", newline="") as handle:
            writer = _writer(handle)
            writer.writerow(LABEL_HEADER)
            writer.writerows(zip(names, pair.labels))
    manifest = [MANIFEST_MARKER, f"# n={len(names)}", *names]
    (out / "meta.txt").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    logger.info("Wrote pair directory", extra={"path": str(out), "vertices": len(names)})
    return out


def read_manifest(path: str | Path) -> VertexTable:
    """Read the vertex order manifest written by :func:`write_pair_dir`."""
    path = Path(path)
    names: list[str] = []
    declared: int | None = None
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != MANIFEST_MARKER:
        raise ManifestMismatchError(f"{path}: not a jointgraph pair manifest")
    for line in lines[1:]:
        entry = line.strip()
        if not entry:
            continue
        if entry.startswith("#"):
            key, _, value = entry.lstrip("# ").partition("=")
            if key == "n":
                try:
                    declared = int(value)
                except ValueError:
                    raise ManifestMismatchError(f"{path}: bad vertex count {value!r}") from None
            continue
        names.append(entry)
    if declared is not None and declared != len(names):
        raise ManifestMismatchError(
            f"{path}: manifest declares {declared} vertices but lists {len(names)}"
        )
    try:
        return VertexTable(tuple(names))
    except InputValidationError as exc:
        raise ManifestMismatchError(f"{path}: {exc}") from None


def read_pair_dir(path: str | Path) -> GraphPair:
    """Load a pair directory, refusing files that disagree with ``meta.txt``."""
    root = Path(path)
    table = read_manifest(root / "meta.txt")
    known = set(table.names)
    graphs = []
    for filename in ("a1.csv", "a2.csv"):
        digraph = load_edge_list(root / filename)
        stray = sorted(set(digraph.vertices.names) - known)
        if stray:
            raise ManifestMismatchError(
                f"{root / filename}: vertex {stray[0]!r} is not in the manifest"
            )
        graphs.append(preprocess(reindex(digraph, table)))
    pair = GraphPair(graphs[0], graphs[1])
    labels_path = root / "labels.csv"
    if labels_path.exists():
        labels = _read_labels(labels_path)
        if set(labels) != known:
            difference = sorted(set(labels) ^ known)
            raise ManifestMismatchError(
                f"{labels_path}: labels disagree with the manifest at vertex {difference[0]!r}"
            )
        pair = pair.with_labels([labels[name] for name in table.names])
    return pair
