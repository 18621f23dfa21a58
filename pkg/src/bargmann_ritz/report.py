"""Bit-stable JSON and CSV writers.

Floats are printed with 17 significant digits, JSON keys are sorted and
non-finite numbers become null, so equal inputs always give equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from enum import Enum

import numpy as np

# fixed CSV columns per result kind
HEADERS = {
    "minimize": ["model", "family", "params_opt", "energy_opt", "oracle_energy", "oracle_gap",
                 "gradient_norm", "iterations", "bracket_used", "stationary_points"],
    "spectrum": ["model", "N", "k", "values", "total_ground", "history"],
    "validation": ["formula", "quantity", "params", "paper_value", "oracle_value", "oracle",
                   "abs_dev", "rel_dev", "stable", "flagged", "note"],
    "sweep": ["lambda", "mu", "power", "alpha_opt", "energy_var", "energy_exact", "gap"],
    "report": ["section", "name", "params", "computed", "reference", "deviation", "note"],
}


class ReportError(OSError):
    pass


def _plain(obj):
    """Reduce dataclasses, enums, numpy scalars and arrays to JSON-ready values."""
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    # keep floats visibly floats so a reader round-trips the type
    if all(c not in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    obj = _plain(obj) if _level == 0 else obj
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(k) + ": " + dumps(obj[k], indent, _level + 1)
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        s = format_float(value)
        return "" if s == "null" else s
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return " ".join(dumps(value, indent=0).split())
    return str(value)


def to_csv(rows, kind: str) -> str:
    if kind not in HEADERS:
        raise ValueError(f"no CSV layout for result kind {kind!r}")
    header = HEADERS[kind]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in _plain(list(rows)):
        w.writerow([_cell(row.get(col)) for col in header])
    return buf.getvalue()


def render(results, fmt: str = "json", kind: str = "report") -> str:
    if fmt == "json":
        return dumps(results) + "\n"
    if fmt == "csv":
        rows = results if isinstance(results, (list, tuple)) else [results]
        return to_csv(rows, kind)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(results, fmt: str = "json", path=None, kind: str = "report", stream=None) -> str:
    """Render ``results`` and write them to ``path`` (or ``stream``). Returns the text."""
    text = render(results, fmt, kind)
    if path is None or str(path) == "-":
        if stream is not None:
            stream.write(text)
        return text
    try:
        with open(os.fspath(path), "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    return text
