"""Text matrix files, JSON reports and CSV tables.

Matrix file layout::

    # optional comment lines
    rows cols
    a11 a12 ...
    ...

Numbers are written with ``repr`` (shortest round-trip decimal), so a
write/read cycle reproduces every binary64 value exactly.
"""

import csv
import io as _io
import json
import os
import tempfile
from dataclasses import fields, is_dataclass

import numpy as np

from .errors import UsageError


class ParseError(UsageError):
    """Malformed matrix or vector file."""


def _fmt(x):
    x = float(x)
    if x == 0.0:
        return "0.0"
    return repr(x)


def format_matrix(M, comments=()):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    lines = [f"# {c}" for c in comments]
    lines.append(f"{M.shape[0]} {M.shape[1]}")
    lines.extend(" ".join(_fmt(x) for x in row) for row in M)
    return "\n".join(lines) + "\n"


def parse_matrix(text, source="<input>"):
    body = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            body.append(s)
    if not body:
        raise ParseError(f"{source}: missing header")
    head = body[0].split()
    try:
        rows, cols = (int(h) for h in head)
    except ValueError:
        raise ParseError(f"{source}: header must be 'rows cols', got {body[0]!r}") from None
    if rows < 1 or cols < 1:
        raise ParseError(f"{source}: dimensions must be positive")
    tokens = " ".join(body[1:]).split()
    if len(tokens) != rows * cols:
        raise ParseError(f"{source}: header declares {rows * cols} entries, found {len(tokens)}")
    try:
        values = np.array([float(t) for t in tokens])
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None
    if not np.all(np.isfinite(values)):
        raise ParseError(f"{source}: non-finite entry")
    return values.reshape(rows, cols)


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_matrix(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text, str(path))


def write_matrix(path, M, comments=()):
    atomic_write(path, format_matrix(M, comments))


def read_vector(path):
    """A matrix file holding a single row or a single column."""
    M = read_matrix(path)
    if 1 not in M.shape:
        raise ParseError(f"{path}: expected a vector, got shape {M.shape}")
    return M.ravel()


def to_jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def dump_report(report):
    return json.dumps(to_jsonable(report), indent=2) + "\n"


def format_csv(header, rows):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()
