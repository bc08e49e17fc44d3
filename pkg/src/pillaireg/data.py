"""CSV ingestion.

Comma-delimited, double-quote escaped, header row mandatory.  Any missing,
non-numeric or non-finite cell in a selected column rejects the file.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError, EmptySelection, MissingColumn, ParseError, TooFewRows
from .linalg import as_matrix, as_vector

Column = str | int


@dataclass(frozen=True)
class ColumnSpec:
    """Which column is x and which are Y.

    ``y_columns=None`` selects every remaining column that holds numbers.
    Columns are matched by header name first, then as zero-based indices.
    """

    x_column: Column
    y_columns: tuple[Column, ...] | None = None

    def __post_init__(self) -> None:
        if self.y_columns is not None:
            object.__setattr__(self, "y_columns", tuple(self.y_columns))
            if not self.y_columns:
                raise EmptySelection("no Y columns selected")
            if self.x_column in self.y_columns:
                raise DataError(f"x column {self.x_column!r} is also listed as a Y column")


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray
    y: np.ndarray
    x_name: str
    y_names: tuple[str, ...]
    name: str = field(default="data")

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def k(self) -> int:
        return self.y.shape[1]


def _resolve(col: Column, header: list[str]) -> int:
    if isinstance(col, str):
        if col in header:
            return header.index(col)
        if col.strip().lstrip("-").isdigit():
            col = int(col)
        else:
            raise MissingColumn(col)
    if not 0 <= col < len(header):
        raise MissingColumn(col)
    return col


def _parse_cell(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(path: str | Path, spec: ColumnSpec) -> Dataset:
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc.strerror}") from exc
    with fh:
        reader = csv.reader(fh, delimiter=",", quotechar='"', strict=True)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path} is empty; a header row is required") from None
        header = [h.strip() for h in header]

        x_idx = _resolve(spec.x_column, header)
        if spec.y_columns is not None:
            y_idx = [_resolve(c, header) for c in spec.y_columns]
            if x_idx in y_idx:
                raise DataError(f"x column {header[x_idx]!r} is also listed as a Y column")
            if len(set(y_idx)) != len(y_idx):
                raise DataError("a Y column is selected more than once")
        else:
            y_idx = None

        rows: list[tuple[int, list[str]]] = []
        try:
            for row in reader:
                if not row or all(not c.strip() for c in row):
                    continue
                rows.append((reader.line_num, row))
        except csv.Error as exc:
            raise DataError(f"{path}, line {reader.line_num}: {exc}") from exc

    if y_idx is None:
        # numeric = at least one cell of the column parses as a finite number
        y_idx = [
            j for j in range(len(header))
            if j != x_idx and any(j < len(r) and _parse_cell(r[j]) is not None for _, r in rows)
        ]
    if not y_idx:
        raise EmptySelection("no numeric Y columns remain after choosing x")

    selected = [x_idx, *y_idx]
    values = np.empty((len(rows), len(selected)))
    for i, (line, row) in enumerate(rows):
        for j, col in enumerate(selected):
            cell = row[col] if col < len(row) else ""
            value = _parse_cell(cell)
            if value is None:
                detail = "missing" if not cell.strip() else repr(cell)
                raise ParseError(line, header[col], detail)
            values[i, j] = value

    n, k = len(rows), len(y_idx)
    if n < k + 2:
        raise TooFewRows(n, k)
    return Dataset(
        x=as_vector(values[:, 0], "x"),
        y=as_matrix(values[:, 1:], "Y"),
        x_name=header[x_idx],
        y_names=tuple(header[j] for j in y_idx),
        name=path.stem,
    )
