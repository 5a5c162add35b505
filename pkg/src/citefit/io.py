"""Count-file ingestion and report/plot-data emission.

Input formats: plain text with one non-negative integer per line, or CSV
with a header row naming a ``citations`` column. Reports are emitted as
TSV (tab separators, '.' decimals, 4 significant figures, fixed column
order) or JSON (full precision); both carry a header block with the tool
version, master seed and rep count.
"""

from __future__ import annotations

import csv
import io as _io
import json
import sys
from typing import Mapping

import numpy as np

from citefit import __version__
from citefit.exceptions import OffsetError, ParseError
from citefit.gof import empirical_cdf
from citefit.sample import CitationSample, as_sample

PLAIN, CSV_WITH_HEADER = "plain", "csv"


def detect_format(first_line: str) -> str:
    stripped = first_line.strip()
    if _parse_int(stripped) is not None:
        return PLAIN
    if "citations" in [c.strip().lower() for c in stripped.split(",")]:
        return CSV_WITH_HEADER
    raise ParseError(
        "expected an integer count or a CSV header with a 'citations' column",
        line_number=1,
    )


def _parse_int(text: str) -> int | None:
    try:
        return int(text, 10)
    except ValueError:
        return None


def load_counts(path) -> list[int]:
    """Raw (pre-offset) counts from a plain-lines or CSV file."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    stripped = [(i + 1, line.strip()) for i, line in enumerate(lines)]
    stripped = [(no, line) for no, line in stripped if line]
    if not stripped:
        raise ParseError("file contains no counts")
    fmt = detect_format(stripped[0][1])
    counts = []
    if fmt == PLAIN:
        for no, line in stripped:
            value = _parse_int(line)
            if value is None:
                raise ParseError(f"not an integer: {line!r}", line_number=no)
            if value < 0:
                raise ParseError(f"negative count: {value}", line_number=no)
            counts.append(value)
    else:
        header = [c.strip().lower() for c in stripped[0][1].split(",")]
        column = header.index("citations")
        for no, line in stripped[1:]:
            cells = next(csv.reader([line]))
            if column >= len(cells):
                raise ParseError("missing 'citations' cell", line_number=no)
            value = _parse_int(cells[column].strip())
            if value is None:
                raise ParseError(f"not an integer: {cells[column]!r}", line_number=no)
            if value < 0:
                raise ParseError(f"negative count: {value}", line_number=no)
            counts.append(value)
        if not counts:
            raise ParseError("CSV file contains no data rows")
    return counts


def ingest(counts, offset: int = 1, label: str = "") -> CitationSample:
    """Map raw counts c to c + offset and record the offset."""
    arr = np.asarray(counts, dtype=np.int64)
    if offset < 0:
        raise OffsetError(f"offset must be non-negative, got {offset}")
    if arr.size and arr.min() < 0:
        raise ParseError(f"negative count: {arr.min()}")
    if offset == 0 and arr.size and arr.min() == 0:
        raise OffsetError("offset 0 with zero counts present; support starts at 1")
    return CitationSample(arr + offset, offset_applied=offset, label=label)


def ingest_file(path, offset: int = 1, label: str | None = None) -> CitationSample:
    return ingest(load_counts(path), offset=offset,
                  label=label if label is not None else str(path))


# --- report emission --------------------------------------------------------

def format_sig4(value) -> str:
    """Table cell formatting: 4 significant figures for floats."""
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v != v:
            return "NA"
        return f"{v:.4g}"
    return str(value)


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"not JSON serialisable: {type(obj)}")


def render_report(rows, fmt: str = "tsv", header: Mapping | None = None,
                  columns=None) -> str:
    """Render rows to TSV or JSON text (see module docstring)."""
    rows = list(rows)
    header = {"tool_version": __version__, **dict(header or {})}
    if fmt == "json":
        return json.dumps({"header": header, "rows": rows},
                          indent=2, default=_json_default) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown report format {fmt!r}")
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    out = _io.StringIO()
    for key, value in header.items():
        out.write(f"# {key}\t{value}\n")
    if columns:
        out.write("\t".join(columns) + "\n")
        for row in rows:
            out.write("\t".join(format_sig4(row.get(c)) for c in columns) + "\n")
    return out.getvalue()


def emit_report(rows, fmt: str = "tsv", destination=None,
                header: Mapping | None = None, columns=None) -> None:
    """Write a rendered report to a path, file object or stdout."""
    _write(render_report(rows, fmt, header, columns), destination)


def render_plot_data(model, sample) -> str:
    """CSV of x, empirical_cdf, model_cdf for x = 1..max(sample)."""
    sample = as_sample(sample)
    sample.require_nonempty()
    m = int(sample.counts.max())
    grid = np.arange(1, m + 1)
    emp = empirical_cdf(sample, grid)
    mod = model.cdf_grid(m)
    out = _io.StringIO()
    out.write("x,empirical_cdf,model_cdf\n")
    for x, e, t in zip(grid, emp, mod):
        out.write(f"{int(x)},{float(e)!r},{float(t)!r}\n")
    return out.getvalue()


def emit_plot_data(model, sample, destination=None) -> None:
    _write(render_plot_data(model, sample), destination)


def _write(text: str, destination) -> None:
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(text)
