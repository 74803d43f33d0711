"""
CSV ingestion and output.

Samples are rows and dimensions are columns. Rows holding a non-finite
value (nan, inf) are dropped and counted; anything that is not a number,
or a row with the wrong number of fields, is a parse error.
"""
import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from rbig_kit.sdk.exceptions import DatasetError, DatasetParseError
from rbig_kit.sdk.utils import as_matrix, read_only

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Dataset:
    """
    Finite n×d sample matrix read from a file.

    Attributes:
        values: Accepted rows
        column_names: Header names, if the file had a header
        rejected_rows: Rows dropped for non-finite entries
    """

    values: np.ndarray
    column_names: Optional[List[str]] = None
    rejected_rows: int = 0
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", read_only(as_matrix(self.values)))

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])


def _parse_cell(token: str, line: int) -> float:
    try:
        return float(token.strip())
    except ValueError as e:
        raise DatasetParseError(f"line {line}: {token.strip()!r} is not a number", line=line) from e


def load_csv(path: PathLike, has_header: bool = False) -> Dataset:
    """
    Read a numeric CSV file.

    Raises:
        DatasetError: If the file is unreadable, empty, or every row is rejected
        DatasetParseError: On ragged rows or non-numeric cells, with the line number
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            lines = list(enumerate(csv.reader(handle), start=1))
    except OSError as e:
        raise DatasetError(f"Cannot read {path}: {e}") from e

    lines = [(number, row) for number, row in lines if row and any(cell.strip() for cell in row)]
    if not lines:
        raise DatasetError(f"{path} is empty")

    column_names = None
    if has_header:
        column_names = [name.strip() for name in lines[0][1]]
        lines = lines[1:]
        if not lines:
            raise DatasetError(f"{path} has a header but no data rows")

    width = len(column_names) if column_names is not None else len(lines[0][1])
    accepted: List[List[float]] = []
    rejected = 0
    for number, row in lines:
        if len(row) != width:
            raise DatasetParseError(
                f"line {number}: expected {width} fields, found {len(row)}", line=number
            )
        values = [_parse_cell(token, number) for token in row]
        if all(math.isfinite(value) for value in values):
            accepted.append(values)
        else:
            rejected += 1

    if rejected:
        logger.warning("Rejected %d rows with non-finite values from %s", rejected, path)
    if not accepted:
        raise DatasetError(f"{path}: all {rejected} rows were rejected")

    return Dataset(
        values=np.asarray(accepted, dtype=np.float64),
        column_names=column_names,
        rejected_rows=rejected,
        source=str(path),
    )


def format_value(value: float) -> str:
    """Shortest text that reads back to the same float."""
    return repr(float(value))


def write_csv(path: PathLike, values, column_names: Optional[Sequence[str]] = None) -> None:
    """Write an n×d matrix (or a vector as one column) as CSV."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if column_names is not None:
            writer.writerow(list(column_names))
        for row in arr:
            writer.writerow([format_value(value) for value in row])
