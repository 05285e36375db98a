"""
Tabular export of regions, bound reports and curves.

Every payload is turned into a :class:`Table` whose rate-valued columns
hold nats.  Conversion to bits happens only inside :func:`emit`, and floats
are written with 12 significant digits so repeated runs are byte-identical.

CSV headers by payload kind::

    vregion  r1,r2[,...],label,units,method,est_error
    hregion  c1,c2[,...],bound,label,units,method,est_error
    curve    x,value,lower,upper,method,est_error
    report   name,value,units,method,est_error
"""
from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import DomainError
from .numerics import LN2
from .regions import HRegion, VRegion

UNITS = ("nats", "bits")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class Table:
    """Rows under a fixed header.

    ``rate_columns`` names the columns that carry nats and are rescaled
    when bits are requested; a ``units`` column, when present, is filled in
    at write time.
    """

    kind: str
    name: str
    columns: tuple
    rows: tuple
    rate_columns: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class BoundReport:
    """Named bound values in nats, with the operating point and a source tag per value."""

    name: str
    values: dict
    operating_point: dict
    sources: dict
    est_errors: dict = field(default_factory=dict)

    def in_bits(self) -> dict:
        return {k: v / LN2 for k, v in self.values.items()}


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x + 0.0, ".12g")
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return "" if x is None else str(x)


def _json_value(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return float(format(x + 0.0, ".12g"))
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    return x


# ---------------------------------------------------------------------------
# payload -> table


def vregion_table(v: VRegion, name: str, method: str) -> Table:
    cols = tuple(f"r{k + 1}" for k in range(v.dim)) + ("label", "units", "method", "est_error")
    rows = tuple(
        tuple(float(c) for c in corner) + (label, None, method, float(err))
        for corner, label, err in zip(v.corners, v.labels, v.est_error)
    )
    rates = frozenset(cols[: v.dim]) | {"est_error"}
    return Table("vregion", name, cols, rows, rates)


def hregion_table(h: HRegion, name: str, method: str, est_error: float = 0.0) -> Table:
    cols = tuple(f"c{k + 1}" for k in range(h.dim)) + ("bound", "label", "units", "method", "est_error")
    rows = tuple(
        tuple(float(c) for c in coeff) + (float(b), label, None, method, float(est_error))
        for coeff, b, label in zip(h.coeffs, h.bounds, h.labels)
    )
    return Table("hregion", name, cols, rows, frozenset({"bound", "est_error"}))


def curve_table(name: str, rows: Iterable[Sequence]) -> Table:
    """Rows of ``(x, value, lower, upper, method, est_error)``; ``x`` is never rescaled."""
    cols = ("x", "value", "lower", "upper", "method", "est_error")
    rows = tuple(tuple(r) for r in rows)
    for r in rows:
        if len(r) != len(cols):
            raise DomainError(f"curve rows need {len(cols)} fields, got {len(r)}")
    return Table("curve", name, cols, rows, frozenset({"value", "lower", "upper", "est_error"}))


def report_table(report: BoundReport) -> Table:
    cols = ("name", "value", "units", "method", "est_error")
    rows = tuple(
        (key, float(val), None, report.sources.get(key, ""), float(report.est_errors.get(key, 0.0)))
        for key, val in report.values.items()
    )
    return Table("report", report.name, cols, rows, frozenset({"value", "est_error"}))


def as_table(payload, name: str = "table", method: str = "") -> Table:
    if isinstance(payload, Table):
        return payload
    if isinstance(payload, VRegion):
        return vregion_table(payload, name, method)
    if isinstance(payload, HRegion):
        return hregion_table(payload, name, method)
    if isinstance(payload, BoundReport):
        return report_table(payload)
    raise TypeError(f"cannot tabulate {type(payload).__name__}")


# ---------------------------------------------------------------------------
# writers


def _converted_rows(table: Table, units: str):
    if units not in UNITS:
        raise DomainError(f"units must be one of {UNITS}")
    scale = 1.0 / LN2 if units == "bits" else 1.0
    idx_rate = {i for i, c in enumerate(table.columns) if c in table.rate_columns}
    idx_units = {i for i, c in enumerate(table.columns) if c == "units"}
    for row in table.rows:
        out = []
        for i, v in enumerate(row):
            if i in idx_units:
                out.append(units)
            elif i in idx_rate and isinstance(v, (float, int, np.floating)) and v is not None:
                out.append(float(v) * scale)
            else:
                out.append(v)
        yield out


def render_csv(table: Table, units: str = "nats") -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in _converted_rows(table, units):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def table_records(table: Table, units: str = "nats") -> list[dict]:
    """Rows as dictionaries with the values exactly as :func:`render_json` writes them."""
    return [dict(zip(table.columns, (_json_value(v) for v in row))) for row in _converted_rows(table, units)]


def table_document(table: Table, units: str = "nats") -> dict:
    return {"kind": table.kind, "name": table.name, "units": units, "columns": list(table.columns), "rows": table_records(table, units)}


def render_json(tables: Sequence[Table] | Table, units: str = "nats") -> str:
    if isinstance(tables, Table):
        doc = table_document(tables, units)
    else:
        doc = [table_document(t, units) for t in tables]
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def emit(payload, fmt: str = "csv", units: str = "nats", out: str | TextIO | None = None, name: str = "table", method: str = "") -> str:
    """Serialize one payload; write it to ``out`` (path or stream) when given.

    Returns the serialized text.
    """
    if fmt not in FORMATS:
        raise DomainError(f"format must be one of {FORMATS}")
    table = as_table(payload, name, method)
    text = render_csv(table, units) if fmt == "csv" else render_json(table, units)
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


__all__ = [
    "BoundReport",
    "FORMATS",
    "Table",
    "UNITS",
    "as_table",
    "curve_table",
    "emit",
    "hregion_table",
    "render_csv",
    "render_json",
    "report_table",
    "table_document",
    "table_records",
    "vregion_table",
]
