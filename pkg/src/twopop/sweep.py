"""Stiff-limit sweep: run the solver down an epsilon ladder and measure convergence.

Each rung repeats the same preset/growth configuration at a smaller epsilon
(optionally on a coarser grid, since the explicit step scales like
eps * dx^2 near the packing density).  Metrics per rung: plateau densities
against the packing values P_M/(eps+P_M), interface positions at the probe
times, L1 distance to the stiff-limit reference, and the complementary
residual norm.

The reference at the final probe time is the spheroid oracle profile for the
spheroid preset; for the two-block preset it is the saturated indicator
profile with the front taken from the smallest-epsilon rung.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .config import RunConfig
from .diagnostics import snapshot_from_table
from .errors import StabilityError
from .grid import PRESET_INTERFACE, Snapshot
from .solver import RunResult, RunStats, run

# Snapshot cadence within each rung (the residual itself is accumulated at
# step level inside the kernel, so this only sets output granularity).
SNAPSHOT_SAMPLES = 30


@dataclass
class SweepRecord:
    epsilon: float
    num_cells: int
    plateau_left: float
    plateau_right: float
    interface_positions: tuple[tuple[float, float], ...]  # (probe time, position)
    l1_distance: float
    residual_l1: float
    step_count: int
    wall_time: float
    stats: RunStats
    probe_snapshots: tuple[Snapshot, ...]


@dataclass
class SweepResult:
    preset: str
    probe_times: tuple[float, ...]
    records: list[SweepRecord]
    reference_snapshots: list[Snapshot]
    aborted: str | None = None

    def report_text(self, include_wall_time: bool = True) -> str:
        from .tableio import fmt_float

        probe_cols = ",".join(f"zeta_t{fmt_float(t)}" for t in self.probe_times)
        header = (
            "epsilon,cells,plateau_left,plateau_right," + probe_cols
            + ",l1_distance,comp_residual_l1,steps"
        )
        if include_wall_time:
            header += ",wall_time"
        lines = [header]
        for r in self.records:
            zetas = ",".join(fmt_float(z) for _, z in r.interface_positions)
            row = (
                f"{fmt_float(r.epsilon)},{r.num_cells},{fmt_float(r.plateau_left)},"
                f"{fmt_float(r.plateau_right)},{zetas},{fmt_float(r.l1_distance)},"
                f"{fmt_float(r.residual_l1)},{r.step_count}"
            )
            if include_wall_time:
                row += f",{fmt_float(r.wall_time)}"
            lines.append(row)
        return "\n".join(lines) + "\n"

    def canonical_bytes(self) -> bytes:
        """Deterministic serialization (wall time excluded)."""
        return self.report_text(include_wall_time=False).encode()


def plateau_density(snapshot: Snapshot, species: int) -> float:
    """Median total density over cells where the species exceeds half its max."""
    arr = snapshot.n1 if species == 1 else snapshot.n2
    peak = float(arr.max())
    if peak <= 0.0:
        return float("nan")
    mask = arr > 0.5 * peak
    return float(np.median(snapshot.total[mask]))


def _dense_times(t_max: float, probes: tuple[float, ...], samples: int) -> tuple[float, ...]:
    times = set(np.linspace(0.0, t_max, samples + 1).tolist())
    times.update(float(t) for t in probes)
    times.add(0.0)
    times.add(float(t_max))
    return tuple(sorted(times))


def _reference_arrays(preset, base: RunConfig, t: float, x, front_position: float):
    """Stiff-limit reference (n1, n2, p) on grid x at probe time t."""
    if preset == "spheroid":
        g = base.growth
        params = oracle.SpheroidParams(
            g1=g.species1.gain,
            g2=g.species2.gain,
            p1=g.species1.homeostatic_pressure,
            p2=g.species2.homeostatic_pressure,
            half_length=base.half_length,
            radius=PRESET_INTERFACE["spheroid"],
        )
        return oracle.limit_profile(params, front_position, x)
    n1 = (np.asarray(x) <= front_position).astype(float)
    n2 = 1.0 - n1
    return n1, n2, np.zeros_like(n1)


def _reference_front(preset, base: RunConfig, t: float, finest: RunResult) -> float:
    if preset == "spheroid":
        track = oracle.integrate_interface(
            oracle.SpheroidParams(
                g1=base.growth.species1.gain,
                g2=base.growth.species2.gain,
                p1=base.growth.species1.homeostatic_pressure,
                p2=base.growth.species2.homeostatic_pressure,
                half_length=base.half_length,
                radius=PRESET_INTERFACE["spheroid"],
            ),
            t_max=t,
            dt_ode=1e-3 if base.dt_ode is None else base.dt_ode,
        )
        return track.radius_at(track.times[-1]) if track.halted else track.radius_at(t)
    zeta = finest.snapshot_at(t).interface
    if zeta is None:
        raise StabilityError("interface", -1, -1, t, float("nan"), finest.config.epsilon)
    return zeta


def run_sweep(
    base_config: RunConfig,
    eps_list=None,
    probe_times=None,
    cells=None,
    snapshot_samples: int = SNAPSHOT_SAMPLES,
) -> SweepResult:
    """One solver run per epsilon with shared preset/growth; metrics per rung.

    A stability failure aborts the remaining rungs but preserves the records
    computed so far (`result.aborted` carries the message).
    """
    eps_list = tuple(base_config.sweep_epsilons if eps_list is None else eps_list)
    probe_times = tuple(base_config.probe_times if probe_times is None else probe_times)
    if cells is None:
        cells = base_config.sweep_cells or tuple(base_config.num_cells for _ in eps_list)
    cells = tuple(int(m) for m in cells)
    if not eps_list:
        raise ValueError("eps_list must be nonempty")
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps_list entries must be positive")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_list must be strictly decreasing")
    if len(cells) != len(eps_list):
        raise ValueError("cells must match eps_list in length")

    t_final = probe_times[-1]
    times = _dense_times(t_final, probe_times, snapshot_samples)
    runs: list[RunResult] = []
    aborted = None
    for eps, m in zip(eps_list, cells):
        cfg = base_config.with_updates(
            mode="run",
            epsilon=eps,
            num_cells=m,
            t_max=t_final,
            snapshot_times=times,
            sweep_epsilons=None,
            sweep_cells=None,
            probe_times=None,
        )
        try:
            runs.append(run(cfg))
        except StabilityError as exc:
            aborted = str(exc)
            break

    records: list[SweepRecord] = []
    reference_snapshots: list[Snapshot] = []
    if runs:
        finest = runs[-1]
        front = _reference_front(base_config.preset, base_config, t_final, finest)
        for res in runs:
            final = res.snapshot_at(t_final)
            ref1, ref2, _ = _reference_arrays(
                base_config.preset, base_config, t_final, final.x, front
            )
            dx = final.cell_width
            dist = float(dx * (np.abs(final.n1 - ref1).sum() + np.abs(final.n2 - ref2).sum()))
            zetas = []
            for t in probe_times:
                z = res.snapshot_at(t).interface
                zetas.append((t, float("nan") if z is None else z))
            records.append(
                SweepRecord(
                    epsilon=res.config.epsilon,
                    num_cells=res.config.num_cells,
                    plateau_left=plateau_density(final, 1),
                    plateau_right=plateau_density(final, 2),
                    interface_positions=tuple(zetas),
                    l1_distance=dist,
                    residual_l1=res.residual_norms[-1],
                    step_count=res.stats.steps,
                    wall_time=res.stats.wall_time,
                    stats=res.stats,
                    probe_snapshots=tuple(res.snapshot_at(t) for t in probe_times),
                )
            )
        for t in probe_times:
            fr = _reference_front(base_config.preset, base_config, t, finest)
            r1, r2, rp = _reference_arrays(
                base_config.preset, base_config, t, finest.grid.cell_centers, fr
            )
            reference_snapshots.append(snapshot_from_table(t, finest.grid.cell_centers, r1, r2, rp))

    return SweepResult(
        preset=base_config.preset,
        probe_times=probe_times,
        records=records,
        reference_snapshots=reference_snapshots,
        aborted=aborted,
    )


def convergence_table(result: SweepResult) -> list[dict]:
    """Rows sorted by epsilon descending with rung-to-rung metric ratios."""
    if not result.records:
        raise ValueError("empty sweep result")
    rows = []
    prev = None
    for r in result.records:
        row = {
            "epsilon": r.epsilon,
            "cells": r.num_cells,
            "plateau_left": r.plateau_left,
            "plateau_right": r.plateau_right,
            "l1_distance": r.l1_distance,
            "residual_l1": r.residual_l1,
            "l1_ratio": None,
            "residual_ratio": None,
        }
        if prev is not None:
            row["l1_ratio"] = _ratio(r.l1_distance, prev.l1_distance)
            row["residual_ratio"] = _ratio(r.residual_l1, prev.residual_l1)
        rows.append(row)
        prev = r
    return rows


def _ratio(num: float, den: float) -> float:
    if den == 0.0:
        return float("nan") if num == 0.0 else float("inf")
    return num / den
