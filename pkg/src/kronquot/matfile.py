"""Whitespace-separated matrix text format.

Layout::

    # optional comment lines anywhere
    rows cols
    a11 a12 ... a1n
    ...
    am1 am2 ... amn

Each token is ``a``, ``a+bi``, ``a-bi`` or ``bi`` with decimal binary64
literals (``1.5``, ``-2e-3+0.25i``, ``3i``, ``i``). Writers emit 17
significant digits, which reproduces every binary64 value exactly on
read-back.
"""

from __future__ import annotations

import math
import os
import re

from .errors import MatrixFormatError
from .matrix import Matrix

_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN_RE = re.compile(
    rf"^[+-]?{_FLOAT}$"               # a
    rf"|^[+-]?(?:{_FLOAT})?i$"        # bi (bare i allowed)
    rf"|^[+-]?{_FLOAT}[+-](?:{_FLOAT})?i$"  # a+bi / a-bi
)


def parse_scalar(token: str) -> complex:
    """Parse one scalar token."""
    if not _TOKEN_RE.match(token):
        raise MatrixFormatError(f"bad scalar token {token!r}")
    return complex(token.replace("i", "j"))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _signbit(x: float) -> bool:
    return math.copysign(1.0, x) < 0


def format_scalar(z: complex) -> str:
    """Format a scalar as the shortest of the a / bi / a+bi token forms."""
    z = complex(z)
    re_, im = z.real, z.imag
    if im == 0.0 and not _signbit(im):
        return _fmt(re_)
    if re_ == 0.0 and not _signbit(re_):
        return _fmt(im) + "i"
    sign = "-" if (im < 0.0 or (im == 0.0 and _signbit(im))) else "+"
    return _fmt(re_) + sign + _fmt(abs(im)) + "i"


def parse_matrix(text: str) -> Matrix:
    """Parse a matrix from text; ``#`` lines and blank lines are skipped."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    if not lines:
        raise MatrixFormatError("no content: expected a 'rows cols' header line")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError(f"header must hold two integers, got {lines[0]!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {rows}x{cols}")
    data = lines[1:]
    if len(data) != rows:
        raise MatrixFormatError(f"expected {rows} data line(s), found {len(data)}")
    entries: list[complex] = []
    for lineno, line in enumerate(data, start=1):
        tokens = line.split()
        if len(tokens) != cols:
            raise MatrixFormatError(f"row {lineno} has {len(tokens)} token(s), expected {cols}")
        entries.extend(parse_scalar(tok) for tok in tokens)
    return Matrix(rows, cols, entries)


def format_matrix(m: Matrix) -> str:
    """Render a matrix in the text format (ends with a newline)."""
    out = [f"{m.rows} {m.cols}"]
    for i in range(1, m.rows + 1):
        out.append(" ".join(format_scalar(m.entry(i, j)) for j in range(1, m.cols + 1)))
    return "\n".join(out) + "\n"


def read_matrix(path: str | os.PathLike) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str | os.PathLike, m: Matrix) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(m))


def to_line(m: Matrix) -> str:
    """Single-line rendering with ``;`` as the line separator."""
    return ";".join(format_matrix(m).splitlines())


def from_line(line: str) -> Matrix:
    return parse_matrix(line.replace(";", "\n"))
