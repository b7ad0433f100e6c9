"""CSV-M matrix files: one row per line, comma-separated decimal floats.

No header, LF line endings, values printed with 17 significant digits so
a write/read round trip is bit-exact for float64.
"""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

from .linalg import as_matrix

__all__ = ["format_entry", "read_matrix", "write_matrix"]


def format_entry(x: float) -> str:
    return f"{x:.17g}"


def write_matrix(path, a) -> None:
    """Write a matrix atomically (temp file + rename) in CSV-M form."""
    m = as_matrix(a)
    text = "\n".join(",".join(format_entry(x) for x in row) for row in m) + "\n"
    _atomic_write_text(path, text)


def read_matrix(path) -> np.ndarray:
    """Parse a CSV-M file; rejects ragged rows and non-finite entries."""
    rows: list[list[float]] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
            if rows and len(row) != len(rows[0]):
                raise ValueError(
                    f"{path}: line {lineno}: expected {len(rows[0])} entries, got {len(row)}"
                )
            if not all(math.isfinite(x) for x in row):
                raise ValueError(f"{path}: line {lineno}: non-finite entry")
            rows.append(row)
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    return np.array(rows, dtype=np.float64)


def _atomic_write_text(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
