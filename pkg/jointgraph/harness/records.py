"""Experiment record and sweep configuration schemas."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from jointgraph.classify import ClassifierConfig, Target
from jointgraph.sgm import SgmConfig

LOOCV_PREFIX = "loocv-"


class Experiment(str, Enum):
    """Sweep that produced a record."""

    SGM_SWEEP = "sgm_sweep"
    CLASS_SWEEP = "class_sweep"


class Metric(str, Enum):
    """Measured quantity of a record."""

    DELTA = "delta"
    CHANCE = "chance"
    JOINT_ERROR = "joint_error"
    SINGLE_ERROR = "single_error"


def loocv_marker(target: Target | str) -> str:
    """Return the replicate marker naming a class-sweep target graph."""
    return f"{LOOCV_PREFIX}{Target(target).value}"


class ExperimentRecord(BaseModel):
    """One measured value of a sweep.

    ``replicate`` is an integer replicate id for the matching sweep and a
    ``loocv-<target>`` marker for the classification sweep.
    """

    model_config = ConfigDict(frozen=True)

    experiment: Experiment
    parameter: int
    replicate: int | str
    metric_name: Metric
    value: float = Field(ge=0.0, le=1.0)

    @property
    def target(self) -> str | None:
        """Return the target graph encoded in a LOOCV marker."""
        if isinstance(self.replicate, str) and self.replicate.startswith(LOOCV_PREFIX):
            return self.replicate[len(LOOCV_PREFIX) :]
        return None

    def sort_key(self) -> tuple[str, int, tuple[int, int, str], str]:
        """Order by experiment, parameter, replicate and metric."""
        if isinstance(self.replicate, int):
            replicate = (0, self.replicate, "")
        else:
            replicate = (1, 0, self.replicate)
        return (self.experiment.value, self.parameter, replicate, self.metric_name.value)


class SummaryRow(BaseModel):
    """Replicate statistics of one metric at one parameter value."""

    experiment: Experiment
    parameter: int
    metric_name: Metric
    target: str | None = None
    mean: float
    std: float
    sem: float
    count: int


class SgmSweepConfig(BaseModel):
    """Seed counts, replicate count and matcher settings of a matching sweep."""

    model_config = ConfigDict(frozen=True)

    m_values: list[int] = Field(default_factory=lambda: list(range(0, 181, 20)), min_length=1)
    replicates: int = Field(default=100, ge=1)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    sgm: SgmConfig = Field(default_factory=SgmConfig)
    shuffle: bool = True

    @field_validator("m_values")
    @classmethod
    def check_m_values(cls, values: list[int]) -> list[int]:
        """Reject negative seed counts."""
        if any(m < 0 for m in values):
            raise ValueError("seed counts must be nonnegative")
        return values


class ClassSweepConfig(BaseModel):
    """Embedding dimensions, classifier and target graphs of a classification sweep."""

    model_config = ConfigDict(frozen=True)

    d_values: list[int] = Field(default_factory=lambda: list(range(2, 120, 3)), min_length=1)
    classifier: ClassifierConfig = Field(default_factory=ClassifierConfig)
    targets: list[Target] = Field(default_factory=lambda: [Target.G1, Target.G2], min_length=1)

    @field_validator("d_values")
    @classmethod
    def check_d_values(cls, values: list[int]) -> list[int]:
        """Reject non-positive dimensions."""
        if any(d < 1 for d in values):
            raise ValueError("embedding dimensions must be at least 1")
        return values

    @field_validator("targets")
    @classmethod
    def check_targets(cls, values: list[Target]) -> list[Target]:
        """Reject repeated targets."""
        if len(set(values)) != len(values):
            raise ValueError("targets must be distinct")
        return values
