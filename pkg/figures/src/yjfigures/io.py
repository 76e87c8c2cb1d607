"""CSV loading with explicit schema validation.

Input files are the delimited outputs of the yjgambles CLI; a wrong or
missing column is a user-facing error that must name the column.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """Input file does not match the documented schema."""


def load_columns(path, required, numeric=None):
    """Read a CSV into per-column numpy arrays, validating the header.

    Parameters
    ----------
    path : str or Path
        CSV file with a header row.
    required : sequence of str
        Column names that must be present (extra columns are tolerated).
    numeric : sequence of str, optional
        Columns parsed as float; defaults to all required columns.

    Returns
    -------
    dict[str, ndarray]
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    numeric = set(required if numeric is None else numeric)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        header = [h.strip() for h in header]
        for col in required:
            if col not in header:
                raise SchemaError(f"{path}: missing required column '{col}' "
                                  f"(found {header})")
        idx = {col: header.index(col) for col in required}
        data = {col: [] for col in required}
        for row_num, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            for col in required:
                cell = row[idx[col]]
                if col in numeric:
                    try:
                        data[col].append(float(cell))
                    except ValueError:
                        raise SchemaError(
                            f"{path}:{row_num}: column '{col}' is not numeric: {cell!r}"
                        ) from None
                else:
                    data[col].append(cell.strip())
    return {
        col: (np.array(vals) if col in numeric else np.array(vals, dtype=object))
        for col, vals in data.items()
    }
