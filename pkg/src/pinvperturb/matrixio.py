"""Whitespace text format for matrices.

Line 1 is a header ``m n field`` with field ``real`` or ``complex``; then m
data rows follow.  A real row holds n numbers; a complex row holds 2n
numbers as re/im pairs.  Lines whose first non-blank character is ``#`` are
comments; blank lines are skipped.  Files are UTF-8 and numbers round-trip
at full double precision.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .core import as_matrix


class MatrixFormatError(ValueError):
    """Parse failure with the 1-based physical line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def loads(text):
    """Parse a matrix from text; returns (matrix, field)."""
    header = None
    m = n = need = 0
    field = ""
    rows = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3:
                raise MatrixFormatError(lineno, "header must be 'm n field'")
            try:
                m, n = int(parts[0]), int(parts[1])
            except ValueError:
                raise MatrixFormatError(
                    lineno, f"dimensions must be integers, got {parts[0]!r} {parts[1]!r}"
                ) from None
            if m < 1 or n < 1:
                raise MatrixFormatError(lineno, f"dimensions must be positive, got {m} {n}")
            field = parts[2]
            if field not in ("real", "complex"):
                raise MatrixFormatError(
                    lineno, f"field must be 'real' or 'complex', got {field!r}"
                )
            header = (m, n)
            need = n if field == "real" else 2 * n
            continue
        if len(rows) == m:
            raise MatrixFormatError(lineno, f"expected {m} data rows, found extra data")
        if len(parts) != need:
            raise MatrixFormatError(
                lineno, f"expected {need} numbers in data row, got {len(parts)}"
            )
        try:
            nums = [float(t) for t in parts]
        except ValueError:
            bad = next(t for t in parts if not _is_number(t))
            raise MatrixFormatError(lineno, f"bad number {bad!r}") from None
        if not all(math.isfinite(x) for x in nums):
            raise MatrixFormatError(lineno, "entries must be finite")
        if field == "real":
            rows.append([complex(x, 0.0) for x in nums])
        else:
            rows.append([complex(nums[2 * k], nums[2 * k + 1]) for k in range(n)])
    if header is None:
        raise MatrixFormatError(max(lineno, 1), "missing 'm n field' header")
    if len(rows) != m:
        raise MatrixFormatError(lineno + 1, f"expected {m} data rows, got {len(rows)}")
    return np.array(rows, dtype=np.complex128), field


def _is_number(token):
    try:
        float(token)
        return True
    except ValueError:
        return False


def dumps(a, field="auto", comments=()):
    """Render a matrix; ``field='auto'`` picks complex only when needed.

    ``comments`` are emitted first, one ``#`` line each, so the output is
    still a valid matrix file.
    """
    a = as_matrix(a)
    m, n = a.shape
    has_imag = bool(np.any(a.imag != 0.0))
    if field == "auto":
        field = "complex" if has_imag else "real"
    elif field == "real" and has_imag:
        raise ValueError("matrix has nonzero imaginary parts, cannot write field 'real'")
    elif field not in ("real", "complex"):
        raise ValueError(f"field must be 'real', 'complex' or 'auto', got {field!r}")
    lines = [f"# {c}" for c in comments]
    lines.append(f"{m} {n} {field}")
    for i in range(m):
        if field == "real":
            lines.append(" ".join(f"{a[i, j].real:.17g}" for j in range(n)))
        else:
            lines.append(
                " ".join(f"{a[i, j].real:.17g} {a[i, j].imag:.17g}" for j in range(n))
            )
    return "\n".join(lines) + "\n"


def load(path):
    """Read a matrix file; returns (matrix, field)."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(a, path, field="auto", comments=()):
    Path(path).write_text(dumps(a, field=field, comments=comments), encoding="utf-8")
