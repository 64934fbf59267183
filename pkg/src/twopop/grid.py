"""Uniform 1D cell-centered mesh, two-species state, and snapshot containers.

The computational domain is (-L, L), divided into M finite-volume cells
C_j = [x_{j-1/2}, x_{j+1/2}] of uniform width dx = 2L/M, with centers
x_j = -L + (j - 1/2) dx for j = 1..M.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

# Initial species interface of each preset (twoblock: step at 0.25;
# spheroid: core radius 0.5).
PRESET_INTERFACE = {"twoblock": 0.25, "spheroid": 0.5}
PRESET_NAMES = tuple(sorted(PRESET_INTERFACE))


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered mesh on (-half_length, half_length)."""

    half_length: float
    num_cells: int
    cell_width: float
    cell_centers: np.ndarray = field(repr=False)

    @property
    def faces(self) -> np.ndarray:
        """Face coordinates x_{j+1/2}, length num_cells + 1."""
        return np.linspace(-self.half_length, self.half_length, self.num_cells + 1)


def make_grid(half_length: float, num_cells: int) -> Grid1D:
    """Build the uniform mesh; requires half_length > 0 and num_cells >= 3."""
    if not half_length > 0:
        raise ConfigError(f"half_length must be positive, got {half_length}")
    if num_cells < 3:
        raise ConfigError(f"need at least 3 cells, got {num_cells}")
    num_cells = int(num_cells)
    dx = 2.0 * half_length / num_cells
    centers = -half_length + (np.arange(num_cells) + 0.5) * dx
    return Grid1D(float(half_length), num_cells, dx, centers)


@dataclass
class TwoSpeciesState:
    """Per-cell densities of the two populations at one time instant.

    Densities are dimensionless volume fractions; the admissible region is
    n1, n2 >= 0 with n1 + n2 < 1 strictly (the pressure law diverges at 1).
    """

    time: float
    n1: np.ndarray
    n2: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.n1 + self.n2

    def pressure(self, epsilon: float) -> np.ndarray:
        from .constitutive import pressure

        return pressure(self.total, epsilon)

    def copy(self) -> "TwoSpeciesState":
        return TwoSpeciesState(self.time, self.n1.copy(), self.n2.copy())


@dataclass
class Snapshot:
    """State sampled at one output time, with cheap scalar diagnostics."""

    time: float
    x: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    p: np.ndarray
    mass1: float
    mass2: float
    interface: float | None
    overlap_max: float

    @property
    def total(self) -> np.ndarray:
        return self.n1 + self.n2

    @property
    def cell_width(self) -> float:
        return float(self.x[1] - self.x[0])


def init_from_preset(grid: Grid1D, preset: str, epsilon: float) -> TwoSpeciesState:
    """Initial data for the named preset.

    twoblock: both species at density 0.98 on complementary blocks meeting
    at x = 0.25 (total density 0.98 everywhere).
    spheroid: species 1 at 0.5 on the core |x| <= 0.5, species 2 at 0.5 on
    the surrounding ring out to the boundary.

    Cells are assigned wholly to one species by center position; the O(dx)
    assignment error vanishes under refinement.
    """
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    x = grid.cell_centers
    n1 = np.zeros(grid.num_cells)
    n2 = np.zeros(grid.num_cells)
    if preset == "twoblock":
        left = x <= PRESET_INTERFACE["twoblock"]
        n1[left] = 0.98
        n2[~left] = 0.98
    elif preset == "spheroid":
        core = np.abs(x) <= PRESET_INTERFACE["spheroid"]
        n1[core] = 0.5
        n2[~core] = 0.5
    else:
        raise ConfigError(f"unknown preset {preset!r}; expected one of {PRESET_NAMES}")
    total = n1 + n2
    if np.any(total >= 1.0):
        raise ConfigError("preset produced total density >= 1 (outside the pressure law domain)")
    return TwoSpeciesState(0.0, n1, n2)
