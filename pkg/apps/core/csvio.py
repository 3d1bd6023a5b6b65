from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from .exceptions import RecordingParseError

logger = logging.getLogger(__name__)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def read_columns(path: str | Path, columns: Sequence[str]) -> dict[str, np.ndarray]:
    """Read numeric columns from a headed UTF-8 CSV file.

    Every data row must have as many fields as the header and every requested
    field must parse as a finite number; failures name the 1-based file line.
    """
    path = Path(path)
    if not path.is_file():
        raise RecordingParseError(f"File not found: {path}")

    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise RecordingParseError(f"{path} is empty", line=1) from None

        missing = [name for name in columns if name not in header]
        if missing:
            raise RecordingParseError(f"{path} has no column {missing[0]!r}", line=1, column=missing[0])

        positions = {name: header.index(name) for name in columns}
        values: dict[str, list[float]] = {name: [] for name in columns}
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise RecordingParseError(
                    f"expected {len(header)} fields, found {len(row)}", line=line
                )
            for name, pos in positions.items():
                cell = row[pos].strip()
                try:
                    number = float(cell)
                except ValueError:
                    raise RecordingParseError(f"non-numeric value {cell!r}", line=line, column=name) from None
                if not math.isfinite(number):
                    raise RecordingParseError(f"non-finite value {cell!r}", line=line, column=name)
                values[name].append(number)

    if not values[columns[0]]:
        raise RecordingParseError(f"{path} has a header but no data rows", line=2)
    return {name: np.asarray(vals, dtype=float) for name, vals in values.items()}


def write_rows(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    *,
    comments: Sequence[str] = (),
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
    logger.info("Wrote %s", path)
    return path
