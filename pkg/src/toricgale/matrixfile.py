"""Plain-text integer matrix files.

Format (UTF-8, LF line endings)::

    # optional name
    3 6
    1 0 0 0 -1 1
    0 1 0 -1 -1 3
    0 0 1 -1 0 2

The header gives rows and columns; each body line holds one row of
whitespace-separated integers.  Blank lines and ``#`` lines after the last
row are ignored.  Only integers are accepted: ``1.0`` or ``1/2`` is a parse
error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .exactmat import IntMatrix

_INT = re.compile(r"[+-]?\d+\Z")


class MatrixParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class MatrixFile:
    matrix: IntMatrix
    name: str | None = None


def _tokens(text: str):
    for m in re.finditer(r"\S+", text):
        yield m.start() + 1, m.group()


def parse_matrix(text: str) -> MatrixFile:
    name = None
    header = None
    rows: list[tuple[int, ...]] = []
    last_line = 0
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        last_line = lineno
        if line.lstrip().startswith("#"):
            if header is not None and len(rows) == header[0]:
                continue
            if header is not None or name is not None:
                raise MatrixParseError(lineno, line.index("#") + 1, "name line must precede the header")
            name = line.lstrip()[1:].strip()
            continue
        toks = list(_tokens(line))
        for col, tok in toks:
            if not _INT.match(tok):
                raise MatrixParseError(lineno, col, f"not an integer: {tok!r}")
        values = tuple(int(t) for _, t in toks)
        if header is None:
            if len(values) != 2 or min(values) < 0:
                raise MatrixParseError(lineno, 1, "header must be two non-negative counts: rows cols")
            header = values
            continue
        if len(rows) == header[0]:
            raise MatrixParseError(lineno, 1, f"more than {header[0]} rows")
        if len(values) != header[1]:
            raise MatrixParseError(
                lineno, toks[-1][0] if toks else 1, f"expected {header[1]} entries, got {len(values)}"
            )
        rows.append(values)
    if header is None:
        raise MatrixParseError(last_line + 1, 1, "missing header")
    if header[1] == 0 and not rows:
        # empty rows are blank lines
        rows = [()] * header[0]
    if len(rows) != header[0]:
        raise MatrixParseError(last_line + 1, 1, f"expected {header[0]} rows, got {len(rows)}")
    return MatrixFile(IntMatrix(header[0], header[1], tuple(rows)), name)


def format_matrix(m: IntMatrix, name: str | None = None) -> str:
    lines = []
    if name:
        lines.append(f"# {name}")
    lines.append(f"{m.nrows} {m.ncols}")
    lines.extend(" ".join(str(x) for x in row) for row in m.entries)
    return "\n".join(lines) + "\n"


def read_matrix(path: str | Path) -> MatrixFile:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def write_matrix(path: str | Path, m: IntMatrix, name: str | None = None) -> None:
    Path(path).write_text(format_matrix(m, name), encoding="utf-8", newline="\n")
