"""Plain-text persistence: snapshots, diagnostics, and sweep reports.

All files are comma-separated with a header row.  Floats are written in
shortest round-trip form (Python repr, integer-valued floats without the
trailing ``.0``), so write -> read reproduces arrays bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

from .diagnostics import DiagnosticsRecord, snapshot_from_table
from .grid import Snapshot
from .sweep import SweepResult

SNAPSHOT_HEADER = "t,x,n1,n2,p"
DIAGNOSTICS_HEADER = "t,zeta,overlap_max,overlap_mass,mass1,mass2,max_n,max_p,comp_residual_l1"


def fmt_float(value: float) -> str:
    """Shortest decimal string that parses back to the same double."""
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def write_snapshot(snapshot: Snapshot, path) -> None:
    rows = [SNAPSHOT_HEADER]
    t = fmt_float(snapshot.time)
    for x, a, b, p in zip(snapshot.x, snapshot.n1, snapshot.n2, snapshot.p):
        rows.append(f"{t},{fmt_float(x)},{fmt_float(a)},{fmt_float(b)},{fmt_float(p)}")
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")


def read_snapshot(path) -> Snapshot:
    """Exact inverse of :func:`write_snapshot`; errors name the offending row."""
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh]
    if not lines or lines[0] != SNAPSHOT_HEADER:
        raise ValueError(f"{path}: row 1: expected header {SNAPSHOT_HEADER!r}")
    cols: list[list[float]] = [[], [], [], [], []]
    for rownum, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}: row {rownum}: expected 5 fields, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"{path}: row {rownum}: malformed number") from None
        for col, v in zip(cols, values):
            col.append(v)
    if len(cols[0]) < 2:
        raise ValueError(f"{path}: fewer than 2 data rows")
    t, x, n1, n2, p = (np.array(c) for c in cols)
    return snapshot_from_table(t[0], x, n1, n2, p)


def write_diagnostics(records: list[DiagnosticsRecord], residual_norms: list[float], path) -> None:
    rows = [DIAGNOSTICS_HEADER]
    for rec, res in zip(records, residual_norms):
        zeta = float("nan") if rec.interface_position is None else rec.interface_position
        rows.append(
            ",".join(
                fmt_float(v)
                for v in (
                    rec.time,
                    zeta,
                    rec.overlap_max,
                    rec.overlap_mass,
                    rec.mass1,
                    rec.mass2,
                    rec.max_n,
                    rec.max_p,
                    res,
                )
            )
        )
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")


def write_sweep_report(result: SweepResult, path) -> None:
    with open(path, "w") as fh:
        fh.write(result.report_text(include_wall_time=True))


def snapshot_filename(index: int) -> str:
    return f"snap_{index:03d}.csv"


def probe_filename(t: float) -> str:
    return f"snap_t{fmt_float(t)}.csv"


def ensure_dir(path) -> None:
    os.makedirs(path, exist_ok=True)
