"""Deterministic JSON/CSV artifact writers.

Floats are rendered with 17 significant digits so artifacts are byte-stable
across runs and lossless to reparse.
"""

from __future__ import annotations

import csv
import json


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def to_json_text(obj) -> str:
    """JSON with 17-significant-digit floats and stable key order."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {to_json_text(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json_text(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return fmt_float(obj)
    if obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json_text(obj))
        fh.write("\n")


def write_csv(path, header, rows) -> None:
    """Rows of numbers; floats formatted, ints passed through."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [fmt_float(v) if isinstance(v, float) else v for v in row]
            )
