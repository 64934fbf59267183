"""Runtime measurements of the quantities the theory constrains.

Everything here is a pure function of snapshots: interface position,
segregation overlap, density/pressure bounds with the exponential lower
bound, and the time-integrated complementary residual

    r(t, x) = p(t,x) * ( d_xx P0(t,x) + int_0^t (n1 G1(p) + n2 G2(p)) ds
                         + n_ini(x) - 1 ),      P0(t,x) = int_0^t p(s,x) ds,

whose L1 norm vanishes in the stiff limit.  Time integrals use trapezoids
over the snapshot cadence; d_xx uses centered differences with mirrored
(zero-gradient) boundary stencils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constitutive import GrowthPair, pressure
from .errors import InterfaceUndefinedError
from .grid import Snapshot

DENSITY_FLOOR = 1e-6  # below this a cell is too empty to interpolate across


@dataclass
class DiagnosticsRecord:
    time: float
    interface_position: float | None
    overlap_max: float
    overlap_mass: float
    mass1: float
    mass2: float
    max_n: float
    max_p: float
    lower_bound_margin: float | None


@dataclass
class ComplementaryResidual:
    time_horizon: float
    residual: np.ndarray
    norm_l1: float


def interface_position(x, n1, n2) -> float:
    """Diagnosed species interface.

    The interface sits at the face right of the rightmost cell where
    n1 >= n2, refined by linear interpolation of (n1 - n2) across that face
    when both cells carry density above DENSITY_FLOOR.  Raises
    InterfaceUndefinedError for states without a dominance crossing (empty,
    fully mixed, or single-species).
    """
    x = np.asarray(x)
    d = np.asarray(n1) - np.asarray(n2)
    dominant = np.nonzero(d >= 0.0)[0]
    if dominant.size == 0:
        raise InterfaceUndefinedError("species 1 is nowhere dominant")
    j = int(dominant[-1])
    if j == d.size - 1:
        raise InterfaceUndefinedError("no species-2 region to the right of species 1")
    total = np.asarray(n1) + np.asarray(n2)
    dx = float(x[j + 1] - x[j])
    if total[j] > DENSITY_FLOOR and total[j + 1] > DENSITY_FLOOR:
        return float(x[j] + dx * d[j] / (d[j] - d[j + 1]))
    return float(0.5 * (x[j] + x[j + 1]))


def segregation_overlap(n1, n2, dx) -> tuple[float, float]:
    """(max_j n1_j n2_j, dx * sum_j n1_j n2_j); both exactly 0 for disjoint supports."""
    prod = np.asarray(n1) * np.asarray(n2)
    return float(prod.max()), float(dx * prod.sum())


def make_snapshot(time, x, n1, n2, epsilon) -> Snapshot:
    """Snapshot with derived pressure and scalar diagnostics."""
    x = np.asarray(x, dtype=float)
    n1 = np.array(n1, dtype=float)
    n2 = np.array(n2, dtype=float)
    p = pressure(n1 + n2, epsilon)
    return _finish_snapshot(time, x, n1, n2, np.asarray(p, dtype=float))


def snapshot_from_table(time, x, n1, n2, p) -> Snapshot:
    """Snapshot from stored columns (pressure taken as-is for exact round trips)."""
    return _finish_snapshot(
        float(time),
        np.asarray(x, dtype=float),
        np.asarray(n1, dtype=float),
        np.asarray(n2, dtype=float),
        np.asarray(p, dtype=float),
    )


def _finish_snapshot(time, x, n1, n2, p) -> Snapshot:
    dx = float(x[1] - x[0])
    try:
        zeta = interface_position(x, n1, n2)
    except InterfaceUndefinedError:
        zeta = None
    overlap_max, _ = segregation_overlap(n1, n2, dx)
    return Snapshot(
        time=float(time),
        x=x,
        n1=n1,
        n2=n2,
        p=p,
        mass1=float(dx * n1.sum()),
        mass2=float(dx * n2.sum()),
        interface=zeta,
        overlap_max=overlap_max,
    )


def bounds_report(
    snapshot: Snapshot,
    pair: GrowthPair,
    initial_floor: float | None = None,
    death_rate: float | None = None,
) -> DiagnosticsRecord:
    """All scalar bound diagnostics of one snapshot.

    The lower-bound margin min_j n_j - A0 * exp(-g t) is reported only when
    the run started from a strictly positive total density A0 > 0 (pass
    initial_floor=None or 0 to mark it not applicable).
    """
    total = snapshot.total
    dx = snapshot.cell_width
    overlap_max, overlap_mass = segregation_overlap(snapshot.n1, snapshot.n2, dx)
    margin = None
    if initial_floor is not None and initial_floor > 0.0:
        g = pair.death_bound if death_rate is None else death_rate
        margin = float(total.min() - initial_floor * math.exp(-g * snapshot.time))
    return DiagnosticsRecord(
        time=snapshot.time,
        interface_position=snapshot.interface,
        overlap_max=overlap_max,
        overlap_mass=overlap_mass,
        mass1=snapshot.mass1,
        mass2=snapshot.mass2,
        max_n=float(total.max()) if total.size else 0.0,
        max_p=float(snapshot.p.max()) if snapshot.p.size else 0.0,
        lower_bound_margin=margin,
    )


def reaction_field(snapshot: Snapshot, pair: GrowthPair) -> np.ndarray:
    """Net volumetric growth n1 G1(p) + n2 G2(p) of a snapshot."""
    return snapshot.n1 * pair.species1.rate(snapshot.p) + snapshot.n2 * pair.species2.rate(snapshot.p)


def second_difference_neumann(values: np.ndarray, dx: float) -> np.ndarray:
    """Centered second difference with mirrored cells at the zero-flux walls."""
    out = np.empty_like(values)
    out[1:-1] = (values[:-2] - 2.0 * values[1:-1] + values[2:]) / (dx * dx)
    out[0] = (values[1] - values[0]) / (dx * dx)
    out[-1] = (values[-2] - values[-1]) / (dx * dx)
    return out


class ComplementaryTracker:
    """Incrementally accumulates P0 and the growth time-integral over snapshots."""

    def __init__(self, first: Snapshot, pair: GrowthPair):
        self.pair = pair
        self.n_ini = first.total.copy()
        self.p_integral = np.zeros_like(first.p)
        self.growth_integral = np.zeros_like(first.p)
        self._prev_time = first.time
        self._prev_p = first.p.copy()
        self._prev_reaction = reaction_field(first, pair)

    def observe(self, snapshot: Snapshot) -> None:
        dt = snapshot.time - self._prev_time
        reaction = reaction_field(snapshot, self.pair)
        self.p_integral += 0.5 * dt * (self._prev_p + snapshot.p)
        self.growth_integral += 0.5 * dt * (self._prev_reaction + reaction)
        self._prev_time = snapshot.time
        self._prev_p = snapshot.p.copy()
        self._prev_reaction = reaction

    def residual(self, snapshot: Snapshot) -> ComplementaryResidual:
        dx = snapshot.cell_width
        bracket = (
            second_difference_neumann(self.p_integral, dx)
            + self.growth_integral
            + self.n_ini
            - 1.0
        )
        r = snapshot.p * bracket
        return ComplementaryResidual(snapshot.time, r, float(dx * np.abs(r).sum()))


def complementary_residual(
    trajectory: list[Snapshot], pair: GrowthPair, t: float
) -> ComplementaryResidual:
    """Complementary residual at horizon t from a snapshot trajectory.

    The trajectory supplies the quadrature nodes; t must coincide with one of
    its snapshot times.  At t = 0 the residual reduces to p_ini (n_ini - 1).
    """
    if len(trajectory) < 3:
        raise ValueError("need at least 3 snapshots for the time quadrature")
    times = [s.time for s in trajectory]
    matches = [i for i, s in enumerate(times) if abs(s - t) <= 1e-9]
    if not matches:
        raise ValueError(f"t={t} is not a snapshot time of this trajectory")
    last = matches[0]
    tracker = ComplementaryTracker(trajectory[0], pair)
    for snap in trajectory[1 : last + 1]:
        tracker.observe(snap)
    return tracker.residual(trajectory[last])
