"""Readers for the simulator's plain-text outputs.

Snapshot files: header ``t,x,n1,n2,p``, one comma-separated row per cell.
Sweep reports: header ``epsilon,cells,plateau_left,plateau_right,
zeta_t<T>...,l1_distance,comp_residual_l1,steps[,wall_time]``, one row per
stiffness rung, rungs ordered by decreasing epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SNAPSHOT_HEADER = "t,x,n1,n2,p"


@dataclass
class SnapshotTable:
    path: str
    time: float
    x: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    p: np.ndarray


@dataclass
class SweepReport:
    path: str
    epsilons: list[float]
    cells: list[int]
    probe_times: list[float]


def read_snapshot_table(path) -> SnapshotTable:
    try:
        with open(path) as fh:
            lines = [ln.rstrip("\n") for ln in fh]
    except OSError as exc:
        raise ValueError(f"cannot read snapshot {path}: {exc}") from None
    if not lines or lines[0] != SNAPSHOT_HEADER:
        raise ValueError(f"{path}: not a snapshot file (bad header)")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}: row {i}: expected 5 fields")
        try:
            rows.append([float(v) for v in parts])
        except ValueError:
            raise ValueError(f"{path}: row {i}: malformed number") from None
    if len(rows) < 2:
        raise ValueError(f"{path}: fewer than 2 data rows")
    data = np.array(rows)
    return SnapshotTable(str(path), float(data[0, 0]), data[:, 1], data[:, 2], data[:, 3], data[:, 4])


def read_sweep_report(path) -> SweepReport:
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise ValueError(f"cannot read sweep report {path}: {exc}") from None
    if not lines:
        raise ValueError(f"{path}: empty sweep report")
    header = lines[0].split(",")
    if header[:2] != ["epsilon", "cells"]:
        raise ValueError(f"{path}: not a sweep report (bad header)")
    probe_times = [float(c[len("zeta_t"):]) for c in header if c.startswith("zeta_t")]
    if not probe_times:
        raise ValueError(f"{path}: no probe-time columns in header")
    epsilons: list[float] = []
    cells: list[int] = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(header):
            raise ValueError(f"{path}: row {i}: expected {len(header)} fields")
        epsilons.append(float(parts[0]))
        cells.append(int(parts[1]))
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError(f"{path}: stiffness rungs must be strictly decreasing")
    return SweepReport(str(path), epsilons, cells, probe_times)
