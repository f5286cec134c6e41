"""Matrix file ingestion and emission (CSV and MatrixMarket array format).

CSV matrices are row-major, one row per line. MatrixMarket follows the
published array-format convention: entries listed column-major after the
size line. Numbers are written with 17 significant digits so a write/read
roundtrip reproduces every double exactly.
"""

import numpy as np

from .exceptions import MatrixParseError, NotSquareError
from .validation import as_matrix

__all__ = ["read_matrix", "write_matrix"]

_MM_HEADER = ("%%matrixmarket", "matrix", "array", "real", "general")


def _infer_format(path):
    return "matrixmarket" if str(path).lower().endswith((".mtx", ".mm")) else "csv"


def _parse_float(token, line_no, col_no):
    try:
        return float(token)
    except ValueError:
        raise MatrixParseError(f"invalid number {token!r}", line=line_no, column=col_no) from None


def _read_csv(path):
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            row = []
            for col_no, token in enumerate(line.split(","), start=1):
                row.append(_parse_float(token.strip(), line_no, col_no))
            rows.append(row)
    if not rows:
        raise MatrixParseError("empty matrix file", line=1)
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise MatrixParseError(
                f"ragged row: expected {width} entries, got {len(row)}", line=i
            )
    return np.array(rows, dtype=float)


def _read_matrixmarket(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    if not lines:
        raise MatrixParseError("empty matrix file", line=1)
    header = lines[0].split()
    if [w.lower() for w in header[:5]] != list(_MM_HEADER):
        raise MatrixParseError(
            "expected header '%%MatrixMarket matrix array real general'", line=1
        )
    idx = 1
    while idx < len(lines) and lines[idx].lstrip().startswith("%"):
        idx += 1
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise MatrixParseError("missing size line", line=len(lines))
    size_tokens = lines[idx].split()
    if len(size_tokens) != 2:
        raise MatrixParseError("size line must hold two integers", line=idx + 1)
    try:
        m, n = int(size_tokens[0]), int(size_tokens[1])
    except ValueError:
        raise MatrixParseError("size line must hold two integers", line=idx + 1) from None
    values = []
    for line_no in range(idx + 1, len(lines)):
        for col_no, token in enumerate(lines[line_no].split(), start=1):
            values.append(_parse_float(token, line_no + 1, col_no))
    if len(values) != m * n:
        raise MatrixParseError(
            f"expected {m * n} entries for a {m}x{n} array, got {len(values)}",
            line=len(lines),
        )
    return np.array(values, dtype=float).reshape((n, m)).T  # column-major fill


def read_matrix(path, fmt=None):
    """Read a dense square matrix from ``path``.

    Parameters
    ----------
    path : str or Path
    fmt : {'csv', 'matrixmarket'}, optional
        Inferred from the extension when omitted (.mtx/.mm means MatrixMarket).

    Raises
    ------
    MatrixParseError
        On malformed content, with the offending line (and column when known).
    NotSquareError
        If the parsed matrix is rectangular.
    """
    fmt = fmt or _infer_format(path)
    if fmt == "csv":
        a = _read_csv(path)
    elif fmt == "matrixmarket":
        a = _read_matrixmarket(path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"matrix in {path} has shape {a.shape}")
    return a


def write_matrix(path, a, fmt=None):
    """Write a matrix with 17 significant digits in the chosen format."""
    a = as_matrix(a, "matrix")
    fmt = fmt or _infer_format(path)
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "csv":
            for row in a:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
        elif fmt == "matrixmarket":
            fh.write("%%MatrixMarket matrix array real general\n")
            fh.write(f"{a.shape[0]} {a.shape[1]}\n")
            for j in range(a.shape[1]):
                for i in range(a.shape[0]):
                    fh.write(f"{a[i, j]:.17g}\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")
