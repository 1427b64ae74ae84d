"""Reading and writing matrix files.

CSV layout::

    object,1,2,3
    A,0.5,0.5,0
    B,0.5,0.5,0
    C,0,0,1

The first header cell is free text; the rest must be the positions ``1..n``
in order.  JSON layout is ``{"labels": [...], "entries": [[...], ...]}``.
Canonical output writes integral values without a decimal point and every
other value with Python's shortest round-trip repr, so parse -> serialise is
byte-identical for canonical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import (
    ROW,
    Labels,
    PenaltyMatrix,
    Tolerance,
    crisp_from_matrix,
    validate_fuzzy,
    validate_penalty,
)
from .errors import ParseError

KINDS = ("fuzzy", "crisp", "penalty")


def format_number(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _parse_float(text: str, path, line: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", path, line, column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {text!r}", path, line, column)
    return value


def parse_csv(text: str, path=None) -> tuple[list[str], np.ndarray]:
    rows = []
    for lineno, cells in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not cells or all(not c.strip() for c in cells):
            continue
        rows.append((lineno, [c.strip() for c in cells]))
    if not rows:
        raise ParseError("empty file", path)
    head_line, header = rows[0]
    n = len(header) - 1
    if n < 1:
        raise ParseError("header needs an object column followed by positions 1..n", path, head_line)
    for k, cell in enumerate(header[1:], start=1):
        if cell != str(k):
            raise ParseError(f"expected position header {k}, found {cell!r}", path, head_line, k + 1)
    body = rows[1:]
    if len(body) != n:
        line = body[-1][0] if body else head_line
        raise ParseError(f"{len(body)} object rows for {n} positions", path, line)
    labels, entries = [], []
    for lineno, cells in body:
        if len(cells) != n + 1:
            col = len(cells) + 1 if len(cells) < n + 1 else n + 2
            raise ParseError(f"ragged row: {len(cells)} cells, expected {n + 1}", path, lineno, col)
        labels.append(cells[0])
        entries.append([_parse_float(c, path, lineno, k) for k, c in enumerate(cells[1:], start=2)])
    return labels, np.array(entries, dtype=np.float64)


def parse_json(text: str, path=None) -> tuple[list[str] | None, np.ndarray]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError('JSON matrix must be an object with an "entries" array', path)
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise ParseError('"entries" must be a non-empty list of rows', path)
    n = len(entries)
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise ParseError(f"ragged row {i + 1}: {got} values, expected {n}", path)
        vals = []
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParseError(f"entry ({i + 1}, {j + 1}) is not a finite number: {v!r}", path)
            vals.append(float(v))
        out.append(vals)
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise ParseError(f'"labels" must be a list of {n} strings', path)
    return labels, np.array(out, dtype=np.float64)


def _looks_like_json(path: Path, text: str) -> bool:
    return path.suffix.lower() == ".json" or text.lstrip().startswith("{")


def read_text(path) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", path) from None


def read_matrix(path) -> tuple[list[str] | None, np.ndarray]:
    """Raw ``(labels, entries)`` from a CSV or JSON matrix file."""
    path = Path(path)
    text = read_text(path)
    if _looks_like_json(path, text):
        return parse_json(text, path)
    return parse_csv(text, path)


def parse_matrix_file(path, kind: str = "fuzzy", mode: str = ROW, tol: Tolerance | None = None):
    """Read and validate a file as a crisp ranking, fuzzy ranking or penalty matrix.

    Raises :class:`ParseError` for malformed files and
    :class:`~fuzzyrank.errors.ValidationError` for well-formed files whose
    matrix breaks the constraints of ``kind``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    raw_labels, entries = read_matrix(path)
    if kind == "penalty":
        return validate_penalty(entries, tol)
    try:
        labels = Labels.default(entries.shape[0]) if raw_labels is None else Labels.of(raw_labels)
    except ValueError as exc:
        raise ParseError(f"bad object labels: {exc}", Path(path)) from None
    if kind == "crisp":
        return crisp_from_matrix(labels, entries)
    return validate_fuzzy(entries, mode, tol, labels)


def read_weights(path) -> np.ndarray:
    """Weights as a flat vector from CSV (any layout) or a JSON list."""
    path = Path(path)
    text = read_text(path)
    if _looks_like_json(path, text) or text.lstrip().startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", path, exc.lineno, exc.colno) from None
        if isinstance(obj, dict):
            obj = obj.get("weights")
        if not isinstance(obj, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            raise ParseError("weights JSON must be a list of numbers or {\"weights\": [...]}", path)
        return np.array(obj, dtype=np.float64)
    values = []
    for lineno, cells in enumerate(csv.reader(io.StringIO(text)), start=1):
        for col, cell in enumerate(cells, start=1):
            cell = cell.strip()
            if not cell:
                continue
            if lineno == 1 and not values:
                try:
                    float(cell)
                except ValueError:
                    continue  # header cell such as "weight"
            values.append(_parse_float(cell, path, lineno, col))
    if not values:
        raise ParseError("no weights found", path)
    return np.array(values, dtype=np.float64)


def matrix_to_csv(labels, entries, corner: str = "object") -> str:
    entries = np.asarray(entries)
    n = entries.shape[1]
    lines = [",".join([corner] + [str(k) for k in range(1, n + 1)])]
    for label, row in zip(labels, entries):
        lines.append(",".join([str(label)] + [format_number(v) for v in row]))
    return "\n".join(lines) + "\n"


def matrix_to_json(labels, entries) -> str:
    entries = np.asarray(entries)
    rows = [[json.loads(format_number(v)) for v in row] for row in entries]
    return json.dumps({"labels": list(labels), "entries": rows}) + "\n"


def serialize(obj, fmt: str = "csv") -> str:
    """Canonical text of a ranking or penalty matrix."""
    corner = "object"
    if isinstance(obj, PenaltyMatrix):
        labels, entries = [str(k) for k in range(1, obj.n + 1)], obj.entries
        corner = "position"
    else:
        labels = list(obj.labels)
        entries = obj.matrix if hasattr(obj, "matrix") else obj.entries
    if fmt == "json":
        return matrix_to_json(labels, entries)
    if fmt == "csv":
        return matrix_to_csv(labels, entries, corner)
    raise ValueError(f"unknown format {fmt!r}")


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
