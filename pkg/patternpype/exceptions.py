"""
Exception hierarchy shared by the library and the command-line surface.

Library functions raise the ``ValueError`` flavoured classes for bad input so
that callers treating them as plain value errors keep working; the CLI maps
each family onto its exit status.
"""

from pathlib import Path
from typing import Any


class PatternpypeError(Exception):
    """Base class for every error raised on purpose by patternpype."""


class DatasetError(PatternpypeError, ValueError):
    """A transaction database could not be read or is not usable.

    Attributes:
        path (Path | None): File the problem was found in, if any
        line (int | None): 1-based line number of the offending record
    """

    def __init__(
        self, message: str, path: Path | str | None = None, line: int | None = None
    ) -> None:
        self.path = Path(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = f"{self.path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")


class StatisticsError(PatternpypeError, ValueError):
    """A statistical quantity was requested outside its domain."""


class InvariantViolation(PatternpypeError):
    """A runtime or termination-detection property did not hold.

    Attributes:
        property_name (str): Short name of the violated property
        seed (int | None): Scheduler seed that reproduces the violation
    """

    def __init__(
        self, property_name: str, detail: str, seed: int | None = None
    ) -> None:
        self.property_name = property_name
        self.seed = seed
        suffix = f" (seed={seed})" if seed is not None else ""
        super().__init__(f"{property_name}: {detail}{suffix}")


class VerificationError(PatternpypeError):
    """The engine disagreed with the exhaustive oracle.

    Attributes:
        field (str): Name of the first differing quantity
        expected (Any): Oracle value
        actual (Any): Engine value
    """

    def __init__(self, field: str, expected: Any, actual: Any) -> None:
        self.field = field
        self.expected = expected
        self.actual = actual
        super().__init__(f"{field} differs: expected {expected!r}, got {actual!r}")
