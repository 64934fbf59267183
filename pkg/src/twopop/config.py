"""Run configuration: a line-oriented `key = value` format with `#` comments.

Keys (see README for the full table): mode, preset, epsilon, half_length,
cells, cfl, tmax, snapshots | snapshot_times, growth (g1,P1,g2,P2), outdir,
and the sweep/oracle extras (sweep_epsilons, sweep_cells, probe_times, r0,
dt_ode).  Parsing validates the growth and initial-data hypotheses; hard
violations refuse to load, warnings are kept available via
:func:`hypothesis_report`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .constitutive import GrowthModel, GrowthPair, HypothesisReport, validate_hypotheses
from .errors import ConfigError
from .grid import PRESET_NAMES, init_from_preset, make_grid

MODES = ("run", "sweep", "oracle")

_KNOWN_KEYS = (
    "mode",
    "preset",
    "epsilon",
    "half_length",
    "cells",
    "cfl",
    "tmax",
    "snapshots",
    "snapshot_times",
    "growth",
    "outdir",
    "sweep_epsilons",
    "sweep_cells",
    "probe_times",
    "r0",
    "dt_ode",
)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    preset: str | None
    epsilon: float | None
    half_length: float
    num_cells: int
    cfl: float
    t_max: float
    snapshot_times: tuple[float, ...]
    growth: GrowthPair
    outdir: str | None = None
    sweep_epsilons: tuple[float, ...] | None = None
    sweep_cells: tuple[int, ...] | None = None
    probe_times: tuple[float, ...] | None = None
    r0: float | None = None
    dt_ode: float | None = None

    def with_updates(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)


def _parse_float(value: str, lineno: int, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: key {key!r}: cannot parse number {value!r}") from None


def _parse_int(value: str, lineno: int, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: key {key!r}: cannot parse integer {value!r}") from None


def _parse_float_list(value: str, lineno: int, key: str) -> tuple[float, ...]:
    parts = [p.strip() for p in value.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"line {lineno}: key {key!r}: empty list")
    return tuple(_parse_float(p, lineno, key) for p in parts)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a config; errors name the offending line."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)

    def get(key):
        return entries.get(key, (None, 0))

    mode_raw, mode_line = get("mode")
    mode = mode_raw or "run"
    if mode not in MODES:
        raise ConfigError(f"line {mode_line}: mode must be one of {MODES}, got {mode!r}")

    preset_check, preset_check_line = get("preset")
    if mode in ("run", "sweep") and preset_check is None:
        raise ConfigError("preset is required")

    growth_raw, growth_line = get("growth")
    if growth_raw is None:
        raise ConfigError("growth is required (four numbers: gain1, pressure1, gain2, pressure2)")
    gvals = _parse_float_list(growth_raw, growth_line, "growth")
    if len(gvals) != 4:
        raise ConfigError(f"line {growth_line}: growth needs exactly 4 numbers, got {len(gvals)}")
    growth = GrowthPair(GrowthModel(gvals[0], gvals[1]), GrowthModel(gvals[2], gvals[3]))

    half_raw, half_line = get("half_length")
    half_length = _parse_float(half_raw, half_line, "half_length") if half_raw else 5.0
    if half_length <= 0:
        raise ConfigError(f"line {half_line}: half_length must be positive")

    cells_raw, cells_line = get("cells")
    num_cells = _parse_int(cells_raw, cells_line, "cells") if cells_raw else 500
    if num_cells < 3:
        raise ConfigError(f"line {cells_line}: cells must be at least 3")

    cfl_raw, cfl_line = get("cfl")
    cfl = _parse_float(cfl_raw, cfl_line, "cfl") if cfl_raw else 0.9
    if not 0.0 < cfl <= 1.0:
        raise ConfigError(f"line {cfl_line}: cfl must lie in (0, 1], got {cfl}")

    preset_raw, preset_line = get("preset")
    epsilon_raw, epsilon_line = get("epsilon")
    tmax_raw, tmax_line = get("tmax")
    outdir = get("outdir")[0]

    preset = preset_raw
    if mode in ("run", "sweep"):
        if preset is None:
            raise ConfigError("preset is required")
        if preset not in PRESET_NAMES:
            raise ConfigError(
                f"line {preset_line}: unknown preset {preset!r}; expected one of {PRESET_NAMES}"
            )

    epsilon = None
    if epsilon_raw is not None:
        epsilon = _parse_float(epsilon_raw, epsilon_line, "epsilon")
        if epsilon <= 0:
            raise ConfigError(f"line {epsilon_line}: epsilon must be positive, got {epsilon}")
    elif mode == "run":
        raise ConfigError("epsilon is required for mode=run")

    sweep_epsilons = sweep_cells = probe_times = None
    r0 = dt_ode = None

    if mode == "sweep":
        se_raw, se_line = get("sweep_epsilons")
        if se_raw is None:
            raise ConfigError("sweep_epsilons is required for mode=sweep")
        sweep_epsilons = _parse_float_list(se_raw, se_line, "sweep_epsilons")
        if any(e <= 0 for e in sweep_epsilons):
            raise ConfigError(f"line {se_line}: sweep_epsilons must be positive")
        if any(b >= a for a, b in zip(sweep_epsilons, sweep_epsilons[1:])):
            raise ConfigError(f"line {se_line}: sweep_epsilons must be strictly decreasing")
        sc_raw, sc_line = get("sweep_cells")
        if sc_raw is not None:
            sweep_cells = tuple(
                _parse_int(p.strip(), sc_line, "sweep_cells") for p in sc_raw.split(",") if p.strip()
            )
            if len(sweep_cells) != len(sweep_epsilons):
                raise ConfigError(
                    f"line {sc_line}: sweep_cells must match sweep_epsilons in length"
                )
        else:
            sweep_cells = tuple(num_cells for _ in sweep_epsilons)
        pt_raw, pt_line = get("probe_times")
        if pt_raw is None:
            raise ConfigError("probe_times is required for mode=sweep")
        probe_times = _parse_float_list(pt_raw, pt_line, "probe_times")
        if any(t <= 0 for t in probe_times) or any(
            b <= a for a, b in zip(probe_times, probe_times[1:])
        ):
            raise ConfigError(f"line {pt_line}: probe_times must be positive and increasing")

    t_max = None
    if tmax_raw is not None:
        t_max = _parse_float(tmax_raw, tmax_line, "tmax")
        if t_max < 0:
            raise ConfigError(f"line {tmax_line}: tmax must be nonnegative")
    if mode == "sweep":
        if t_max is None:
            t_max = probe_times[-1]
        elif abs(t_max - probe_times[-1]) > 1e-12:
            raise ConfigError("tmax must equal the last probe time in mode=sweep")
    elif t_max is None:
        raise ConfigError("tmax is required")

    if mode == "oracle":
        r0_raw, r0_line = get("r0")
        if r0_raw is None:
            raise ConfigError("r0 (initial interface radius) is required for mode=oracle")
        r0 = _parse_float(r0_raw, r0_line, "r0")
        if not 0.0 < r0 < half_length:
            raise ConfigError(f"line {r0_line}: r0 must lie in (0, half_length)")
        dt_raw, dt_line = get("dt_ode")
        dt_ode = _parse_float(dt_raw, dt_line, "dt_ode") if dt_raw else 1e-3
        if dt_ode <= 0:
            raise ConfigError(f"line {dt_line}: dt_ode must be positive")

    st_raw, st_line = get("snapshot_times")
    sc_count_raw, sc_count_line = get("snapshots")
    if st_raw is not None:
        times = _parse_float_list(st_raw, st_line, "snapshot_times")
        if any(t < 0 or t > t_max + 1e-12 for t in times):
            raise ConfigError(f"line {st_line}: snapshot_times must lie in [0, tmax]")
        times = sorted(set(min(t, t_max) for t in times))
        if not times or times[0] != 0.0:
            times.insert(0, 0.0)
        if times[-1] != t_max:
            times.append(t_max)
        snapshot_times = tuple(times)
    else:
        count = _parse_int(sc_count_raw, sc_count_line, "snapshots") if sc_count_raw else 7
        if count < 1:
            raise ConfigError(f"line {sc_count_line}: snapshots must be at least 1")
        if t_max == 0.0:
            snapshot_times = (0.0,)
        else:
            snapshot_times = tuple(float(t) for t in np.linspace(0.0, t_max, max(count, 2)))

    config = RunConfig(
        mode=mode,
        preset=preset,
        epsilon=epsilon,
        half_length=half_length,
        num_cells=num_cells,
        cfl=cfl,
        t_max=t_max,
        snapshot_times=snapshot_times,
        growth=growth,
        outdir=outdir,
        sweep_epsilons=sweep_epsilons,
        sweep_cells=sweep_cells,
        probe_times=probe_times,
        r0=r0,
        dt_ode=dt_ode,
    )

    if mode in ("run", "sweep"):
        report = hypothesis_report(config)
        if report.failures:
            names = ", ".join(c.name for c in report.failures)
            raise ConfigError(f"hypothesis validation failed: {names}\n{report.format()}")
    return config


def hypothesis_report(config: RunConfig) -> HypothesisReport:
    """Growth/initial-data hypothesis report for a preset-based config."""
    cells = config.num_cells if config.sweep_cells is None else config.sweep_cells[0]
    eps = config.epsilon if config.epsilon is not None else config.sweep_epsilons[0]
    grid = make_grid(config.half_length, cells)
    state = init_from_preset(grid, config.preset, eps)
    return validate_hypotheses(config.growth, eps, state)


def serialize_config(config: RunConfig) -> str:
    """Text form of a config; re-parsing yields an equal RunConfig."""
    from .tableio import fmt_float

    g = config.growth
    lines = [f"mode = {config.mode}"]
    if config.preset is not None:
        lines.append(f"preset = {config.preset}")
    if config.epsilon is not None:
        lines.append(f"epsilon = {fmt_float(config.epsilon)}")
    lines.append(f"half_length = {fmt_float(config.half_length)}")
    lines.append(f"cells = {config.num_cells}")
    lines.append(f"cfl = {fmt_float(config.cfl)}")
    lines.append(f"tmax = {fmt_float(config.t_max)}")
    lines.append(
        "growth = "
        + ", ".join(
            fmt_float(v)
            for v in (
                g.species1.gain,
                g.species1.homeostatic_pressure,
                g.species2.gain,
                g.species2.homeostatic_pressure,
            )
        )
    )
    lines.append("snapshot_times = " + ", ".join(fmt_float(t) for t in config.snapshot_times))
    if config.outdir is not None:
        lines.append(f"outdir = {config.outdir}")
    if config.sweep_epsilons is not None:
        lines.append("sweep_epsilons = " + ", ".join(fmt_float(e) for e in config.sweep_epsilons))
    if config.sweep_cells is not None:
        lines.append("sweep_cells = " + ", ".join(str(m) for m in config.sweep_cells))
    if config.probe_times is not None:
        lines.append("probe_times = " + ", ".join(fmt_float(t) for t in config.probe_times))
    if config.r0 is not None:
        lines.append(f"r0 = {fmt_float(config.r0)}")
    if config.dt_ode is not None:
        lines.append(f"dt_ode = {fmt_float(config.dt_ode)}")
    return "\n".join(lines) + "\n"
