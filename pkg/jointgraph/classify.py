"""Vertex classification on embedded coordinates with leave-one-out validation."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sklearn.svm import SVC

from jointgraph.embed import EmbeddingMatrix, ase, omnibus, split_embedding
from jointgraph.errors import InputValidationError
from jointgraph.graph.models import GraphPair, SimpleGraph

logger = logging.getLogger(__name__)


class Target(str, Enum):
    """Which graph of a pair supplies the classified rows."""

    G1 = "g1"
    G2 = "g2"


class ClassifierConfig(BaseModel):
    """Classifier choice and hyperparameters."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["knn", "svm_rbf"] = "knn"
    k: int = Field(default=5, ge=1)
    gamma: float = Field(default=1.0, gt=0)
    c: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def check_odd_neighbor_count(self) -> ClassifierConfig:
        """Require an odd neighbor count for knn."""
        if self.kind == "knn" and self.k % 2 == 0:
            raise ValueError(f"knn needs an odd neighbor count, got k={self.k}")
        return self


@dataclass(frozen=True, eq=False)
class LabeledPoints:
    """Points with one categorical label each and a declared class order."""

    coords: np.ndarray = field(repr=False)
    labels: tuple[str, ...]
    classes: tuple[str, ...]

    def __post_init__(self) -> None:
        """Validate shapes and label membership."""
        coords = np.array(self.coords, dtype=np.float64, copy=True)
        if coords.ndim != 2:
            raise InputValidationError(f"coords must be a matrix, got shape {coords.shape}")
        labels = tuple(self.labels)
        classes = tuple(self.classes)
        if coords.shape[0] < 2:
            raise InputValidationError(f"need at least 2 points, got {coords.shape[0]}")
        if len(labels) != coords.shape[0]:
            raise InputValidationError(f"{len(labels)} labels for {coords.shape[0]} points")
        if len(set(classes)) != len(classes) or len(classes) < 2:
            raise InputValidationError("classes must list at least 2 distinct labels")
        unknown = set(labels) - set(classes)
        if unknown:
            raise InputValidationError(f"label {sorted(unknown)[0]!r} is not a declared class")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "classes", classes)

    @classmethod
    def from_labels(
        cls,
        coords: np.ndarray,
        labels: Sequence[str],
        classes: Sequence[str] | None = None,
    ) -> LabeledPoints:
        """Build points whose classes default to the sorted distinct labels."""
        return cls(coords, tuple(labels), tuple(classes or sorted(set(labels))))

    @property
    def n(self) -> int:
        """Return the number of points."""
        return int(self.coords.shape[0])

    @property
    def d(self) -> int:
        """Return the point dimension."""
        return int(self.coords.shape[1])

    def without(self, i: int) -> LabeledPoints:
        """Return the points with row ``i`` held out."""
        return LabeledPoints(
            np.delete(self.coords, i, axis=0),
            self.labels[:i] + self.labels[i + 1 :],
            self.classes,
        )


def _knn(train: LabeledPoints, point: np.ndarray, k: int) -> str:
    distances = np.linalg.norm(train.coords - point, axis=1)
    nearest = np.argsort(distances, kind="stable")[: min(k, train.n)]
    position = {label: i for i, label in enumerate(train.classes)}
    votes = np.zeros(len(train.classes), dtype=np.int64)
    for row in nearest:
        votes[position[train.labels[row]]] += 1
    return train.classes[int(np.argmax(votes))]


def _svm_rbf(train: LabeledPoints, point: np.ndarray, cfg: ClassifierConfig) -> str:
    present = set(train.labels)
    if len(present) == 1:
        return next(iter(present))
    model = SVC(kernel="rbf", gamma=cfg.gamma, C=cfg.c)
    model.fit(train.coords, np.asarray(train.labels))
    return str(model.predict(point.reshape(1, -1))[0])


def classify_vertex(
    train: LabeledPoints, test_point: np.ndarray, cfg: ClassifierConfig | None = None
) -> str:
    """Predict the label of ``test_point`` from ``train``.

    kNN distance ties go to the smaller row index and vote ties to the
    earlier class in ``train.classes``.
    """
    cfg = cfg or ClassifierConfig()
    point = np.asarray(test_point, dtype=np.float64).reshape(-1)
    if point.size != train.d:
        raise InputValidationError(
            f"test point has dimension {point.size}, training points have {train.d}"
        )
    if cfg.kind == "knn":
        return _knn(train, point, cfg.k)
    return _svm_rbf(train, point, cfg)


def loocv_predictions(
    points: LabeledPoints, cfg: ClassifierConfig | None = None
) -> tuple[str, ...]:
    """Predict each point from a model trained on all the others."""
    cfg = cfg or ClassifierConfig()
    if points.n < 3:
        raise InputValidationError(f"leave-one-out needs at least 3 points, got {points.n}")
    return tuple(
        classify_vertex(points.without(i), points.coords[i], cfg) for i in range(points.n)
    )


def loocv_error(points: LabeledPoints, cfg: ClassifierConfig | None = None) -> float:
    """Return the leave-one-out misclassification rate."""
    predictions = loocv_predictions(points, cfg)
    wrong = sum(1 for predicted, actual in zip(predictions, points.labels) if predicted != actual)
    logger.debug("Leave-one-out finished", extra={"points": points.n, "errors": wrong})
    return wrong / points.n


def _labels_for(pair_labels: Sequence[str] | None, labels: Sequence[str] | None) -> list[str]:
    chosen = labels if labels is not None else pair_labels
    if chosen is None:
        raise InputValidationError("classification needs vertex labels")
    return list(chosen)


def embedding_error(
    embedding: EmbeddingMatrix, labels: Sequence[str], cfg: ClassifierConfig | None = None
) -> float:
    """LOOCV error of classifying embedded rows by ``labels``."""
    if embedding.rows != len(labels):
        raise InputValidationError(f"{len(labels)} labels for {embedding.rows} embedded rows")
    return loocv_error(LabeledPoints.from_labels(embedding.coords, labels), cfg)


def joint_classification_error(
    pair: GraphPair,
    labels: Sequence[str] | None,
    d: int,
    cfg: ClassifierConfig | None = None,
    target: Target | str = Target.G1,
) -> float:
    """Embed the omnibus matrix and classify the target graph's rows."""
    labels = _labels_for(pair.labels, labels)
    if not 1 <= d <= 2 * pair.n:
        raise InputValidationError(f"joint dimension must be in [1, {2 * pair.n}], got {d}")
    u1, u2 = split_embedding(ase(omnibus(pair), d), pair.n)
    rows = u1 if Target(target) is Target.G1 else u2
    return embedding_error(rows, labels, cfg)


def single_classification_error(
    g: SimpleGraph,
    labels: Sequence[str] | None,
    d: int,
    cfg: ClassifierConfig | None = None,
) -> float:
    """Embed one adjacency matrix and classify its rows."""
    labels = _labels_for(g.vertices.labels, labels)
    if not 1 <= d <= g.n:
        raise InputValidationError(f"single dimension must be in [1, {g.n}], got {d}")
    return embedding_error(ase(g.adjacency, d), labels, cfg)
