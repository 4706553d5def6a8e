"""Exception hierarchy shared by all jointgraph modules."""

from __future__ import annotations

from enum import Enum
from pathlib import Path


class ErrorKind(str, Enum):
    """Normalized error categories."""

    VALIDATION = "validation"
    PARSE = "parse"
    DEGENERATE = "degenerate"
    MANIFEST = "manifest"
    NUMERICAL = "numerical"


class JointGraphError(Exception):
    """Base class for errors raised by jointgraph."""

    kind: ErrorKind = ErrorKind.VALIDATION


class InputValidationError(JointGraphError, ValueError):
    """An operation was called with inputs violating its preconditions."""


class ParseError(InputValidationError):
    """A file row could not be parsed."""

    kind = ErrorKind.PARSE

    def __init__(
        self, message: str, path: str | Path | None = None, line: int | None = None
    ) -> None:
        """Store location details and render them into the message."""
        self.path = Path(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = f"{self.path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")


class DegenerateGraphError(InputValidationError):
    """A graph operation produced an unusable result."""

    kind = ErrorKind.DEGENERATE


class ManifestMismatchError(InputValidationError):
    """Files in a pair directory disagree with its vertex manifest."""

    kind = ErrorKind.MANIFEST


class EigenSolverError(JointGraphError, RuntimeError):
    """The symmetric eigensolver failed or returned inaccurate pairs."""

    kind = ErrorKind.NUMERICAL
