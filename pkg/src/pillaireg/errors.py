"""Exception hierarchy.

``DataError`` covers bad input files and selections (CLI exit code 1);
``NumericalError`` covers singular designs and failed consistency checks
(exit code 2).
"""

from __future__ import annotations


class PillaiRegError(Exception):
    """Base class for all package errors."""


class DataError(PillaiRegError, ValueError):
    pass


class NumericalError(PillaiRegError, ArithmeticError):
    pass


class NotPositiveDefinite(NumericalError):
    def __init__(self, pivot: int, value: float | None = None) -> None:
        self.pivot = pivot
        self.value = value
        msg = f"matrix is not positive definite (pivot {pivot}"
        if value is not None:
            msg += f", value {value:.3e}"
        super().__init__(msg + ")")


class RankDeficient(NumericalError):
    """The design is singular: a constant or collinear column of Y.

    ``column`` is the zero-based index of the first Y column found to be
    dependent on the ones before it (``None`` when it cannot be attributed).
    """

    def __init__(self, message: str, column: int | None = None) -> None:
        self.column = column
        super().__init__(message)


class DegenerateX(NumericalError):
    """x has zero centered sum of squares."""


class DegenerateFit(NumericalError):
    """R² equals 1, so the F statistic is infinite."""


class ConsistencyError(NumericalError):
    """An internal identity check failed beyond rounding tolerance."""


class ParseError(DataError):
    def __init__(self, line: int, column: str, detail: str = "") -> None:
        self.line = line
        self.column = column
        msg = f"line {line}, column {column!r}: cannot parse numeric value"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class MissingColumn(DataError):
    def __init__(self, name: str | int) -> None:
        self.name = name
        super().__init__(f"column {name!r} not found in header")


class EmptySelection(DataError):
    pass


class TooFewRows(DataError):
    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        super().__init__(f"need at least k + 2 = {k + 2} rows for k = {k}, got {n}")
