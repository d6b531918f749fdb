"""Tabular reports with deterministic JSON, CSV and plain-table rendering.

Cells hold exact values only: integers, booleans, exact rationals,
strings and None.  Rationals serialize as "p/q" strings (never floats),
always with the slash so that parsing is unambiguous, and
``ScanReport.from_json(report.to_json()) == report`` holds for every
report this package emits.  Identical inputs produce byte-identical
output in every format.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

_FRACTION_RE = re.compile(r"^-?\d+/\d+$")

Cell = object  # int | bool | str | Fraction | None


@dataclass(frozen=True)
class Row:
    params: tuple
    values: tuple


@dataclass(frozen=True)
class ScanReport:
    """A titled table: parameter columns, value columns, one provenance tag per value column."""

    title: str
    params: Tuple[str, ...]
    columns: Tuple[str, ...]
    provenance: Tuple[str, ...]
    rows: Tuple[Row, ...]

    def __post_init__(self) -> None:
        if len(self.provenance) != len(self.columns):
            raise ValueError("need exactly one provenance tag per value column")
        for row in self.rows:
            if len(row.params) != len(self.params) or len(row.values) != len(self.columns):
                raise ValueError("row shape does not match the header")

    @staticmethod
    def build(title, params, columns, provenance, rows, sort: bool = False) -> "ScanReport":
        built = tuple(Row(tuple(p), tuple(v)) for p, v in rows)
        if sort:
            built = tuple(sorted(built, key=lambda row: row.params))
        return ScanReport(title, tuple(params), tuple(columns), tuple(provenance), built)

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "title": self.title,
            "params": list(self.params),
            "columns": list(self.columns),
            "provenance": list(self.provenance),
            "rows": [
                {
                    "params": {k: _encode(v) for k, v in zip(self.params, row.params)},
                    "values": {k: _encode(v) for k, v in zip(self.columns, row.values)},
                }
                for row in self.rows
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    @staticmethod
    def from_json(text: str) -> "ScanReport":
        doc = json.loads(text)
        params = tuple(doc["params"])
        columns = tuple(doc["columns"])
        rows = tuple(
            Row(
                tuple(_decode(row["params"][k]) for k in params),
                tuple(_decode(row["values"][k]) for k in columns),
            )
            for row in doc["rows"]
        )
        return ScanReport(doc["title"], params, columns, tuple(doc["provenance"]), rows)

    # -- CSV and plain table ---------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(self.params) + list(self.columns))
        for row in self.rows:
            writer.writerow([_cell_text(v) for v in row.params + row.values])
        return buf.getvalue()

    def to_table(self) -> str:
        header = list(self.params) + list(self.columns)
        body = [[_cell_text(v) for v in row.params + row.values] for row in self.rows]
        widths = [len(h) for h in header]
        for line in body:
            for i, cell in enumerate(line):
                widths[i] = max(widths[i], len(cell))
        def fmt(line):
            return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip()
        rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
        lines = [f"# {self.title}", fmt(header), rule]
        lines.extend(fmt(line) for line in body)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r}")


def _encode(value: Cell):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, str):
        if _FRACTION_RE.match(value):
            raise ValueError("string cells must not look like rationals")
        return value
    raise TypeError(f"unsupported cell type {type(value).__name__}")


def _decode(value):
    if isinstance(value, str) and _FRACTION_RE.match(value):
        return Fraction(value)
    return value


def _cell_text(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return str(value)
