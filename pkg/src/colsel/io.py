"""Matrix file loading and deterministic JSON reporting.

Supported inputs: plain CSV (one row per line, comma-separated decimals) and
the Matrix Market subset ``array real general`` / ``coordinate real
general|symmetric``.  Dense matrices only, refused above ``MAX_ENTRIES``
entries.

Reports are serialized with sorted keys, floats printed to 17 significant
digits (round-trip exact for doubles), non-finite floats as ``null``, and a
trailing newline, so identical inputs produce byte-identical files.
"""

import dataclasses
import json
import math
import sys

import numpy as np

from .errors import DomainError, ParseError

MAX_ENTRIES = 10**7


def _guard_size(rows, cols, path):
    if rows * cols > MAX_ENTRIES:
        raise DomainError(
            f"{path}: {rows}x{cols} has more than {MAX_ENTRIES} entries; "
            "this tool only handles dense matrices up to that size"
        )


def _parse_csv(text, path):
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split(",")
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(
                f"{path}: line {lineno} has {len(tokens)} fields, expected {width}",
                code="ragged-row",
                line=lineno,
            )
        row = []
        for colno, tok in enumerate(tokens, start=1):
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(
                    f"{path}: cannot parse {tok.strip()!r} at line {lineno}, "
                    f"field {colno}",
                    code="bad-token",
                    line=lineno,
                    column=colno,
                ) from None
        rows.append(row)
        if len(rows) == 1:
            _guard_size(len(text.splitlines()), width, path)
    if not rows:
        raise ParseError(f"{path}: no rows found", code="empty")
    return np.array(rows, dtype=float)


def _mm_value(tok, path, lineno):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(
            f"{path}: cannot parse {tok!r} at line {lineno}",
            code="bad-token",
            line=lineno,
        ) from None


def _parse_matrix_market(text, path):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ParseError(f"{path}: missing MatrixMarket banner", code="mm-header", line=1)
    banner = lines[0].split()
    if len(banner) != 5 or banner[1].lower() != "matrix":
        raise ParseError(f"{path}: malformed banner {lines[0]!r}", code="mm-header", line=1)
    layout, field, symmetry = (w.lower() for w in banner[2:5])
    if field != "real":
        raise ParseError(
            f"{path}: unsupported field {field!r} (only 'real')",
            code="mm-unsupported",
            line=1,
        )
    allowed = {"array": ("general",), "coordinate": ("general", "symmetric")}
    if layout not in allowed:
        raise ParseError(
            f"{path}: unsupported layout {layout!r}", code="mm-unsupported", line=1
        )
    if symmetry not in allowed[layout]:
        raise ParseError(
            f"{path}: unsupported symmetry {symmetry!r} for {layout} layout",
            code="mm-unsupported",
            line=1,
        )

    body = [
        (no, ln.strip())
        for no, ln in enumerate(lines[1:], start=2)
        if ln.strip() and not ln.lstrip().startswith("%")
    ]
    if not body:
        raise ParseError(f"{path}: missing size line", code="mm-size")
    size_line_no, size_line = body[0]
    sizes = size_line.split()
    expected = 2 if layout == "array" else 3
    if len(sizes) != expected or not all(tok.lstrip("-").isdigit() for tok in sizes):
        raise ParseError(
            f"{path}: malformed size line {size_line!r}",
            code="mm-size",
            line=size_line_no,
        )
    dims = [int(tok) for tok in sizes]
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise ParseError(
            f"{path}: non-positive dimensions {rows}x{cols}",
            code="mm-size",
            line=size_line_no,
        )
    _guard_size(rows, cols, path)
    entries = body[1:]

    if layout == "array":
        if len(entries) != rows * cols:
            raise ParseError(
                f"{path}: expected {rows * cols} entries, found {len(entries)}",
                code="mm-count",
            )
        values = [_mm_value(ln.split()[0], path, no) for no, ln in entries]
        # Matrix Market array data is column-major.
        return np.array(values, dtype=float).reshape((cols, rows)).T

    nnz = dims[2]
    if len(entries) != nnz:
        raise ParseError(
            f"{path}: expected {nnz} coordinate entries, found {len(entries)}",
            code="mm-count",
        )
    a = np.zeros((rows, cols))
    for no, ln in entries:
        tokens = ln.split()
        if len(tokens) != 3:
            raise ParseError(
                f"{path}: coordinate line {no} needs 'row col value'",
                code="mm-entry",
                line=no,
            )
        i = int(_mm_value(tokens[0], path, no))
        j = int(_mm_value(tokens[1], path, no))
        v = _mm_value(tokens[2], path, no)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(
                f"{path}: coordinate ({i}, {j}) out of range at line {no}",
                code="mm-entry",
                line=no,
            )
        a[i - 1, j - 1] = v
        if symmetry == "symmetric":
            a[j - 1, i - 1] = v
    return a


def load_matrix(path, fmt=None):
    """Load a dense matrix from ``path``.

    ``fmt`` is ``"csv"`` or ``"matrix-market"``; when omitted it is inferred
    from the extension (``.mtx``/``.mm`` mean Matrix Market).
    """
    if fmt is None:
        lowered = str(path).lower()
        fmt = "matrix-market" if lowered.endswith((".mtx", ".mm")) else "csv"
    if fmt not in ("csv", "matrix-market"):
        raise DomainError(f"unknown matrix format {fmt!r}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "csv":
        a = _parse_csv(text, path)
    else:
        a = _parse_matrix_market(text, path)
    _guard_size(a.shape[0], a.shape[1], path)
    if not np.isfinite(a).all():
        raise DomainError(f"{path}: matrix contains non-finite entries")
    return a


def _format_float(x):
    if math.isnan(x) or math.isinf(x):
        return "null"
    out = format(float(x), ".17g")
    if not any(c in out for c in ".eE"):
        out += ".0"
    return out


def to_jsonable(obj):
    """Convert arrays, numpy scalars, dataclasses, and tuples to JSON shapes."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps_report(obj):
    """Serialize to deterministic JSON: sorted keys, 17-digit floats."""
    obj = to_jsonable(obj)
    pieces = []
    _emit(obj, pieces)
    return "".join(pieces) + "\n"


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, list):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, k in enumerate(sorted(obj)):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _emit(obj[k], out)
        out.append("}")
    else:
        raise DomainError(f"cannot serialize {type(obj).__name__} into a report")


def write_report(report, path=None):
    """Write ``report`` as deterministic JSON to ``path`` or standard output."""
    text = dumps_report(report)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
