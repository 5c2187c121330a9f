"""Plain-text code files and bound-table export.

A code file is a header line ``n k N`` followed by N whitespace-separated
transition elements (1-based coordinates).  Everything after ``#`` on a line
is a comment.
"""

from __future__ import annotations

import csv
import io

from .bounds import BoundTable, explain
from .errors import ElementOutOfRange, LengthMismatch, ParseError
from .model import CircuitCode

ELEMENTS_PER_LINE = 30


def _strip_comments(text: str) -> list[str]:
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _ints(tokens: list[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer token in {what}: {exc}") from None


def parse_code_file(text: bytes | str) -> CircuitCode:
    """Parse and closure-check a code file; the claimed spread is not verified."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    lines = _strip_comments(text)
    if not lines:
        raise ParseError("empty code file")
    header = _ints(lines[0].split(), "header")
    if len(header) != 3:
        raise ParseError(f"header must be 'n k N', got {lines[0]!r}")
    n, k, N = header
    if n < 1 or k < 1 or N < 1:
        raise ParseError(f"header values must be positive, got {header}")
    body = _ints(" ".join(lines[1:]).split(), "body")
    if len(body) != N:
        raise LengthMismatch(f"header says N={N} but body has {len(body)} elements")
    bad = [e for e in body if not 1 <= e <= n]
    if bad:
        raise ElementOutOfRange(f"element {bad[0]} outside 1..{n}")
    return CircuitCode(n, k, body)


def format_code_file(code: CircuitCode, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{code.n} {code.k} {code.N}")
    elems = code.seq.elements
    for i in range(0, len(elems), ELEMENTS_PER_LINE):
        out.append(" ".join(str(e) for e in elems[i : i + ELEMENTS_PER_LINE]))
    return "\n".join(out) + "\n"


def export_table(table: BoundTable, format: str = "csv") -> bytes:
    """CSV grid (rows n, columns k) or a provenance-annotated text listing.

    Only dimensions holding at least one entry get a row.
    """
    if format == "csv":
        ks = list(range(table.k_range[0], table.k_range[1] + 1))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [f"k={k}" for k in ks])
        for n in sorted({n for n, _ in table.entries}):
            row = [table.value(n, k) for k in ks]
            w.writerow([n] + ["" if v is None else v for v in row])
        return buf.getvalue().encode()
    if format == "text":
        lines = []
        for e in table.ordered():
            flag = " (exact)" if e.exact else ""
            lines.append(f"K({e.n},{e.k}) >= {e.value}{flag}  {explain(e)}")
        return ("\n".join(lines) + "\n" if lines else "").encode()
    raise ValueError(f"unknown format {format!r}")
