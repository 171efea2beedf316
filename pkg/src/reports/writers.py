# src/reports/writers.py
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Literal, Optional, Sequence

Format = Literal["csv", "json"]

SIGNIFICANT = 12


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT}g}"
    return str(value)


def _json_value(value: Any) -> Any:
    # JSON mirrors the CSV text: same rounding, non-finite floats as strings
    if isinstance(value, float):
        return float(format_value(value)) if math.isfinite(value) else format_value(value)
    return value


def render_table(rows: Iterable[Dict[str, Any]], columns: Sequence[str], fmt: Format = "csv") -> str:
    rows = list(rows)
    if fmt == "json":
        records = [{c: _json_value(row.get(c)) for c in columns} for row in rows]
        return json.dumps(records, indent=2) + "\n"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def write_table(
    rows: Iterable[Dict[str, Any]],
    columns: Sequence[str],
    fmt: Format = "csv",
    out: Optional[Path] = None,
) -> str:
    """Render the table; when `out` is given also write it there. Returns the text."""
    text = render_table(rows, columns, fmt)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    return text
