"""Fixed-schema CSV writers and the ASCII coverage raster."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence

from .propagation import CoverageGrid
from .scenario import ComparisonResult, DistanceRow, SampleResult, SweepTable

SCHEMAS: dict[str, tuple[str, ...]] = {
    "sweep": ("theta_deg", "element", "gain_dbi"),
    "link": ("d_m", "selection", "p_r_dbm"),
    "coverage": ("east_m", "north_m", "p_r_dbm"),
    "run": (
        "index", "east_m", "north_m", "heading_deg", "theta_rel_deg",
        "selection", "tx_gain_dbi", "p_r_dbm", "rssi_dbm",
    ),
    "compare": ("index", "delta_rss_db"),
}


def fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "NaN"
        return f"{value:.4f}"
    return str(value)


def to_csv_text(rows: Iterable[Sequence], schema: str) -> str:
    header = SCHEMAS[schema]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row {row!r} does not match the {schema} schema")
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit_csv(rows: Iterable[Sequence], schema: str, path) -> None:
    """Write ``rows`` under a fixed schema; raises OSError if ``path`` is unwritable."""
    text = to_csv_text(rows, schema)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def sweep_rows(table: SweepTable):
    return [(r.theta, f"ant{r.element}", r.gain) for r in table.rows]


def link_rows(rows: Sequence[DistanceRow]):
    return [(r.distance, r.selection.label, r.p_r) for r in rows]


def coverage_rows(grid: CoverageGrid):
    return list(grid.rows())


def run_rows(results: Sequence[SampleResult]):
    return [
        (r.index, r.position.east, r.position.north, r.heading, r.theta_rel,
         r.selection.label, r.tx_gain, r.p_r, r.rssi)
        for r in results
    ]


def compare_rows(cmp: ComparisonResult):
    rows = [(i, d) for i, d in zip(cmp.indices, cmp.delta_rss)]
    rows.append(("mean", cmp.mean_delta))
    return rows


def raster_text(grid: CoverageGrid) -> str:
    """North-up, row-major, semicolon-separated dBm values; NaN for the transmitter cell."""
    lines = []
    for j in range(grid.height - 1, -1, -1):
        lines.append(";".join(fmt(float(v)) for v in grid.values[j]))
    return "\n".join(lines) + "\n"


def write_raster(grid: CoverageGrid, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(raster_text(grid))
