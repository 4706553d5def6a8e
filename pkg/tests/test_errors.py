"""Test the errors module."""

from pathlib import Path

from jointgraph.errors import (
    DegenerateGraphError,
    EigenSolverError,
    ErrorKind,
    InputValidationError,
    JointGraphError,
    ManifestMismatchError,
    ParseError,
)


def test_parse_error_renders_path_and_line() -> None:
    """ParseError should prefix the message with its location."""
    error = ParseError("bad weight", Path("edges.csv"), 4)

    assert str(error) == "edges.csv:4: bad weight"
    assert error.line == 4
    assert error.kind is ErrorKind.PARSE


def test_parse_error_without_location() -> None:
    """ParseError without a path should keep the bare message."""
    assert str(ParseError("bad weight")) == "bad weight"


def test_error_kinds_follow_the_hierarchy() -> None:
    """Each error class should carry its normalized kind."""
    assert InputValidationError("x").kind is ErrorKind.VALIDATION
    assert DegenerateGraphError("x").kind is ErrorKind.DEGENERATE
    assert ManifestMismatchError("x").kind is ErrorKind.MANIFEST
    assert EigenSolverError("x").kind is ErrorKind.NUMERICAL


def test_validation_errors_are_value_errors() -> None:
    """Validation errors should be catchable as ValueError and JointGraphError."""
    error = ManifestMismatchError("x")

    assert isinstance(error, ValueError)
    assert isinstance(error, JointGraphError)
    assert isinstance(EigenSolverError("x"), RuntimeError)
