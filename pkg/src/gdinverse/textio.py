"""Plain-text matrix and parameter files.

Matrix file::

    field GF 5          # or "field Q"; the line may be omitted for Q
    rows 2 cols 3
    1 0 4
    2 2 1

Lines starting with ``#`` and blank lines are ignored.  A stream may hold
several matrices back to back.  Output is deterministic: single spaces, LF
line endings, canonical scalar forms.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from .errors import ParseError
from .field import QQ, Field, parse_field
from .matrix import Matrix


def content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def tokens(raw: str):
    """Yield ``(column, token)`` pairs; columns are 1-based."""
    i = 0
    n = len(raw)
    while i < n:
        while i < n and raw[i].isspace():
            i += 1
        if i >= n:
            break
        j = i
        while j < n and not raw[j].isspace():
            j += 1
        yield i + 1, raw[i:j]
        i = j


def parse_scalar(field: Field, tok: str, lineno: int, col: int):
    try:
        return field.parse(tok)
    except ParseError as exc:
        raise ParseError(exc.message, lineno, col) from None


def _parse_one(lines, field_override: Field | None) -> Matrix:
    lineno, raw = next(lines)
    toks = list(tokens(raw))
    field = QQ
    if toks[0][1] == "field":
        field_text = raw.split("field", 1)[1]
        try:
            field = parse_field(field_text)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, toks[1][0] if len(toks) > 1 else len(raw) + 1) from None
        try:
            lineno, raw = next(lines)
        except StopIteration:
            raise ParseError("missing 'rows <r> cols <c>' line", lineno + 1, 1) from None
        toks = list(tokens(raw))
    if field_override is not None:
        field = field_override
    words = [t for _, t in toks]
    if len(words) != 4 or words[0] != "rows" or words[2] != "cols":
        raise ParseError("expected 'rows <r> cols <c>'", lineno, toks[0][0])
    try:
        nrows, ncols = int(words[1]), int(words[3])
    except ValueError:
        raise ParseError("row and column counts must be integers", lineno, toks[1][0]) from None
    if nrows < 0 or ncols < 0:
        raise ParseError("negative dimension", lineno, toks[1][0])
    if ncols == 0:
        # zero-width rows have no text lines
        return Matrix._raw(field, ((),) * nrows, 0)
    rows = []
    for _ in range(nrows):
        try:
            lineno, raw = next(lines)
        except StopIteration:
            raise ParseError(f"expected {nrows} rows, found {len(rows)}", lineno + 1, 1) from None
        toks = list(tokens(raw))
        if len(toks) != ncols:
            col = toks[ncols][0] if len(toks) > ncols else len(raw.rstrip()) + 1
            raise ParseError(f"expected {ncols} entries, found {len(toks)}", lineno, col)
        rows.append(tuple(parse_scalar(field, t, lineno, c) for c, t in toks))
    return Matrix._raw(field, tuple(rows), ncols)


def parse_matrices(text: str, field: Field | None = None) -> list[Matrix]:
    """Parse every matrix in ``text``.  ``field`` overrides the headers."""
    lines = content_lines(text)
    out = []
    while True:
        try:
            first = next(lines)
        except StopIteration:
            return out
        # chain() rather than a generator: closing a delegating generator
        # would close the shared line iterator too.
        out.append(_parse_one(itertools.chain([first], lines), field))


def parse_matrix(text: str, field: Field | None = None) -> Matrix:
    mats = parse_matrices(text, field)
    if len(mats) != 1:
        raise ParseError(f"expected exactly one matrix, found {len(mats)}")
    return mats[0]


def format_matrix(M: Matrix, title: str | None = None) -> str:
    fmt = M.field.format
    out = []
    if title:
        out.append(f"# {title}")
    out.append(M.field.header())
    out.append(f"rows {M.nrows} cols {M.ncols}")
    if M.ncols:
        out.extend(" ".join(fmt(x) for x in r) for r in M.rows())
    return "\n".join(out) + "\n"


def read_matrix(path, field: Field | None = None) -> Matrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"), field)


def write_matrix(path, M: Matrix) -> None:
    Path(path).write_text(format_matrix(M), encoding="utf-8", newline="\n")
