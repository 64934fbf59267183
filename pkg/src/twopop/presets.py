"""Canonical parameter sets for the shipped benchmark scenarios.

Growth pairs (linear laws, written as rate(p) = gain * (root - p)):

* two-block:   G1(p) = 10 (1 - p/2), G2(p) = 10 (1 - p); species 1 has the
  larger homeostatic pressure (2 vs 1), so its block invades the other.
* core regression: G1(p) = 10 (1 - p), G2(p) = 10 (1 - p/2); the inner core
  sits below the ring's homeostatic pressure and dies out.
* core expansion:  G1(p) = 10 (4 - p), G2(p) = 10 (1 - p/2); the inner core
  dominates and pushes the ring toward the wall.
"""

from __future__ import annotations

from .config import RunConfig, parse_config
from .constitutive import GrowthModel, GrowthPair

TWOBLOCK_GROWTH = GrowthPair(GrowthModel(5.0, 2.0), GrowthModel(10.0, 1.0))
CORE_REGRESSION_GROWTH = GrowthPair(GrowthModel(10.0, 1.0), GrowthModel(5.0, 2.0))
CORE_EXPANSION_GROWTH = GrowthPair(GrowthModel(10.0, 4.0), GrowthModel(5.0, 2.0))

TWOBLOCK_HALF_LENGTH = 5.0
SPHEROID_HALF_LENGTH = 2.5


def _growth_text(pair: GrowthPair) -> str:
    g1, g2 = pair.species1, pair.species2
    return f"{g1.gain:g}, {g1.homeostatic_pressure:g}, {g2.gain:g}, {g2.homeostatic_pressure:g}"


def twoblock_config(
    epsilon: float,
    cells: int = 500,
    t_max: float = 1.5,
    snapshot_times=None,
    cfl: float = 0.9,
) -> RunConfig:
    lines = [
        "mode = run",
        "preset = twoblock",
        f"epsilon = {epsilon!r}",
        f"half_length = {TWOBLOCK_HALF_LENGTH!r}",
        f"cells = {cells}",
        f"cfl = {cfl!r}",
        f"tmax = {t_max!r}",
        f"growth = {_growth_text(TWOBLOCK_GROWTH)}",
    ]
    if snapshot_times is not None:
        lines.append("snapshot_times = " + ", ".join(repr(float(t)) for t in snapshot_times))
    return parse_config("\n".join(lines))


def spheroid_config(
    growth: GrowthPair,
    epsilon: float = 0.01,
    cells: int = 300,
    t_max: float = 1.0,
    snapshot_times=None,
    cfl: float = 0.9,
) -> RunConfig:
    lines = [
        "mode = run",
        "preset = spheroid",
        f"epsilon = {epsilon!r}",
        f"half_length = {SPHEROID_HALF_LENGTH!r}",
        f"cells = {cells}",
        f"cfl = {cfl!r}",
        f"tmax = {t_max!r}",
        f"growth = {_growth_text(growth)}",
    ]
    if snapshot_times is not None:
        lines.append("snapshot_times = " + ", ".join(repr(float(t)) for t in snapshot_times))
    return parse_config("\n".join(lines))


def twoblock_sweep_config(
    eps_list=(1.0, 0.1, 0.01, 0.001),
    cells=(500, 500, 200, 100),
    probe_times=(0.5, 1.0, 1.5),
    cfl: float = 0.9,
) -> RunConfig:
    lines = [
        "mode = sweep",
        "preset = twoblock",
        f"half_length = {TWOBLOCK_HALF_LENGTH!r}",
        f"cfl = {cfl!r}",
        f"growth = {_growth_text(TWOBLOCK_GROWTH)}",
        "sweep_epsilons = " + ", ".join(repr(float(e)) for e in eps_list),
        "sweep_cells = " + ", ".join(str(int(m)) for m in cells),
        "probe_times = " + ", ".join(repr(float(t)) for t in probe_times),
    ]
    return parse_config("\n".join(lines))
