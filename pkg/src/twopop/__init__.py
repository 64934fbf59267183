"""Finite-volume simulator for two-population tissue growth with a stiff
pressure law, plus the matching Hele-Shaw free-boundary oracles."""

from .backend import BACKEND_NAME
from .config import RunConfig, hypothesis_report, parse_config, serialize_config
from .constitutive import (
    GrowthModel,
    GrowthPair,
    density_of_pressure,
    diffusion_slope,
    growth_eval,
    packing_density,
    pressure,
    validate_hypotheses,
)
from .diagnostics import (
    bounds_report,
    complementary_residual,
    interface_position,
    segregation_overlap,
)
from .errors import (
    ConfigError,
    DegenerateProfileError,
    InterfaceUndefinedError,
    StabilityError,
)
from .grid import Grid1D, Snapshot, TwoSpeciesState, init_from_preset, make_grid
from .oracle import (
    SpheroidParams,
    build_profile,
    integrate_interface,
    interface_velocity,
    limit_profile,
)
from .solver import face_velocities, run, stable_dt, step, upwind_flux
from .sweep import convergence_table, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "ConfigError",
    "DegenerateProfileError",
    "Grid1D",
    "GrowthModel",
    "GrowthPair",
    "InterfaceUndefinedError",
    "RunConfig",
    "Snapshot",
    "SpheroidParams",
    "StabilityError",
    "TwoSpeciesState",
    "bounds_report",
    "build_profile",
    "complementary_residual",
    "convergence_table",
    "density_of_pressure",
    "diffusion_slope",
    "face_velocities",
    "growth_eval",
    "hypothesis_report",
    "init_from_preset",
    "integrate_interface",
    "interface_position",
    "interface_velocity",
    "limit_profile",
    "make_grid",
    "packing_density",
    "parse_config",
    "pressure",
    "run",
    "run_sweep",
    "segregation_overlap",
    "serialize_config",
    "stable_dt",
    "step",
    "upwind_flux",
    "validate_hypotheses",
]
