"""Canonical text serialization of rational matrices (format v1).

Layout: a header line "skewmm-matrix v1 p=<prime>", then p-1 lines of p-1
single-space-separated rationals written as "<num>" or "<num>/<den>" in
lowest terms with a positive denominator.  UTF-8, LF line endings, a final
newline, no trailing whitespace, no floats.  The parser is strict enough
that parse -> serialize reproduces the input bytes exactly, which is what
makes generated files safe to diff and hash.
"""

from __future__ import annotations

import re

from .cyclotomic import is_odd_prime
from .rational import Rat
from .transform import RatMatrix

HEADER_RE = re.compile(r"skewmm-matrix v1 p=([1-9][0-9]*)\Z")
TOKEN_RE = re.compile(r"-?(?:0|[1-9][0-9]*)(?:/[1-9][0-9]*)?\Z")


class MatrixFormatError(ValueError):
    """Input text is not a canonical v1 matrix file."""


def format_rational(x) -> str:
    """Canonical token for one entry ("3", "-7/2", "0")."""
    return str(x)


def serialize_matrix(M: RatMatrix) -> str:
    lines = [f"skewmm-matrix v1 p={M.p}"]
    lines.extend(" ".join(format_rational(x) for x in row) for row in M.rows)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RatMatrix:
    """Parse a canonical v1 file; rejects anything serialize would not emit."""
    if "\r" in text:
        raise MatrixFormatError("carriage returns are not allowed (LF line endings only)")
    if not text.endswith("\n"):
        raise MatrixFormatError("file must end with a newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise MatrixFormatError("empty file")
    header = HEADER_RE.fullmatch(lines[0])
    if header is None:
        raise MatrixFormatError(f"bad header line: {lines[0]!r}")
    p = int(header.group(1))
    if not is_odd_prime(p):
        raise MatrixFormatError(f"header prime {p} is not an odd prime")
    n = p - 1
    if len(lines) != 1 + n:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split(" ")
        if len(tokens) != n or any(tok == "" for tok in tokens):
            raise MatrixFormatError(f"line {lineno}: expected {n} single-space-separated entries")
        row = []
        for tok in tokens:
            if TOKEN_RE.fullmatch(tok) is None:
                raise MatrixFormatError(f"line {lineno}: bad rational token {tok!r}")
            value = Rat(tok)
            if format_rational(value) != tok:
                raise MatrixFormatError(f"line {lineno}: non-canonical rational {tok!r}")
            row.append(value)
        rows.append(row)
    return RatMatrix(p, rows)


def write_matrix_file(path, M: RatMatrix) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize_matrix(M))


def read_matrix_file(path) -> RatMatrix:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_matrix(fh.read())
