"""Interface diagnosis, overlap, bound reports, complementary residual."""

import math

import numpy as np
import pytest

from twopop import (
    InterfaceUndefinedError,
    init_from_preset,
    interface_position,
    make_grid,
    segregation_overlap,
)
from twopop.diagnostics import (
    bounds_report,
    complementary_residual,
    make_snapshot,
    second_difference_neumann,
)
from twopop.presets import TWOBLOCK_GROWTH


def _preset_snapshot(preset, eps, half=5.0, cells=500):
    grid = make_grid(half, cells)
    state = init_from_preset(grid, preset, eps)
    return grid, make_snapshot(0.0, grid.cell_centers, state.n1, state.n2, eps)


def test_interface_twoblock_initial():
    grid, snap = _preset_snapshot("twoblock", 1.0)
    zeta = interface_position(snap.x, snap.n1, snap.n2)
    assert abs(zeta - 0.25) <= grid.cell_width / 2 + 1e-12


def test_interface_spheroid_initial():
    grid, snap = _preset_snapshot("spheroid", 0.01)
    zeta = interface_position(snap.x, snap.n1, snap.n2)
    assert abs(zeta - 0.5) <= grid.cell_width / 2 + 1e-12


def test_interface_undefined_for_single_species_and_empty():
    x = np.linspace(-1, 1, 10)
    ones = np.full(10, 0.5)
    zeros = np.zeros(10)
    with pytest.raises(InterfaceUndefinedError):
        interface_position(x, ones, zeros)  # pure species 1
    with pytest.raises(InterfaceUndefinedError):
        interface_position(x, zeros, ones)  # pure species 2
    with pytest.raises(InterfaceUndefinedError):
        interface_position(x, zeros, zeros)  # empty
    with pytest.raises(InterfaceUndefinedError):
        interface_position(x, ones, ones)  # fully mixed


def test_interface_interpolates_crossing():
    x = np.array([0.5, 1.5, 2.5, 3.5])
    n1 = np.array([0.6, 0.6, 0.2, 0.0])
    n2 = np.array([0.0, 0.2, 0.6, 0.6])
    # crossing between cells 1 and 2: d = +0.4 -> -0.4, zero at the face 2.0
    assert interface_position(x, n1, n2) == pytest.approx(2.0, abs=1e-14)


def test_segregation_overlap_cases():
    assert segregation_overlap(np.array([0.5, 0.0]), np.array([0.0, 0.5]), 0.1) == (0.0, 0.0)
    omax, omass = segregation_overlap(np.array([0.5]), np.array([0.5]), 0.02)
    assert omax == pytest.approx(0.25)
    assert omass == pytest.approx(0.25 * 0.02)


def test_bounds_report_twoblock_initial():
    grid, snap = _preset_snapshot("twoblock", 1.0)
    rec = bounds_report(snap, TWOBLOCK_GROWTH, initial_floor=0.98)
    assert rec.max_n == pytest.approx(0.98, rel=1e-15)
    assert rec.max_p == pytest.approx(49.0, rel=1e-12)
    assert rec.mass1 + rec.mass2 == pytest.approx(0.98 * 10.0, rel=1e-12)
    assert rec.lower_bound_margin == pytest.approx(0.0, abs=1e-12)


def test_bounds_report_plateau_pressure_is_cap():
    grid = make_grid(5.0, 50)
    n = np.full(50, 2.0 / 3.0)
    snap = make_snapshot(1.0, grid.cell_centers, n, np.zeros(50), 1.0)
    rec = bounds_report(snap, TWOBLOCK_GROWTH)
    assert rec.max_p == pytest.approx(2.0, rel=1e-13)
    assert rec.lower_bound_margin is None


def test_bounds_report_empty_state():
    grid = make_grid(5.0, 50)
    z = np.zeros(50)
    snap = make_snapshot(0.0, grid.cell_centers, z, z, 1.0)
    rec = bounds_report(snap, TWOBLOCK_GROWTH, initial_floor=0.0)
    assert rec.mass1 == 0.0 and rec.mass2 == 0.0
    assert rec.max_n == 0.0 and rec.max_p == 0.0
    assert rec.lower_bound_margin is None
    assert rec.interface_position is None


def test_second_difference_neumann_flat_and_quadratic():
    dx = 0.5
    flat = np.full(8, 3.0)
    assert np.all(second_difference_neumann(flat, dx) == 0.0)
    x = np.arange(8) * dx
    quad = x * x
    d2 = second_difference_neumann(quad, dx)
    assert np.allclose(d2[1:-1], 2.0, rtol=0, atol=1e-12)


def _synthetic_trajectory(eps, cells=64, times=(0.0, 0.05, 0.1)):
    grid = make_grid(5.0, cells)
    state = init_from_preset(grid, "twoblock", eps)
    return grid, [
        make_snapshot(t, grid.cell_centers, state.n1, state.n2, eps) for t in times
    ]


def test_complementary_residual_at_time_zero():
    eps = 0.001
    grid, traj = _synthetic_trajectory(eps)
    res = complementary_residual(traj, TWOBLOCK_GROWTH, 0.0)
    # r = p_ini (n_ini - 1) = -0.98 eps per cell for the 0.98 block
    expected_cell = -(eps * 0.98 / 0.02) * 0.02
    assert np.allclose(res.residual, expected_cell, rtol=1e-12)
    assert res.norm_l1 == pytest.approx(abs(expected_cell) * grid.num_cells * grid.cell_width,
                                        rel=1e-12)


def test_complementary_residual_vanishes_where_pressure_zero():
    grid = make_grid(5.0, 40)
    n1 = np.zeros(40)
    n1[:10] = 0.5
    snaps = [make_snapshot(t, grid.cell_centers, n1, np.zeros(40), 1.0) for t in (0, 0.1, 0.2)]
    res = complementary_residual(snaps, TWOBLOCK_GROWTH, 0.2)
    assert np.all(res.residual[10:] == 0.0)


def test_complementary_residual_needs_three_snapshots():
    grid, traj = _synthetic_trajectory(0.1)
    with pytest.raises(ValueError):
        complementary_residual(traj[:2], TWOBLOCK_GROWTH, 0.05)
    with pytest.raises(ValueError):
        complementary_residual(traj, TWOBLOCK_GROWTH, 0.33)  # not a snapshot time


def test_complementary_residual_matches_quadrature_by_hand():
    # constant-in-time synthetic trajectory: integrals are exact for trapezoids
    eps = 0.5
    grid = make_grid(2.0, 32)
    n1 = np.full(32, 0.4)
    n2 = np.full(32, 0.2)
    t_end = 0.3
    snaps = [make_snapshot(t, grid.cell_centers, n1, n2, eps) for t in (0.0, 0.15, t_end)]
    res = complementary_residual(snaps, TWOBLOCK_GROWTH, t_end)
    p = eps * 0.6 / 0.4
    growth = 0.4 * 5.0 * (2.0 - p) + 0.2 * 10.0 * (1.0 - p)
    expected = p * (0.0 + t_end * growth + 0.6 - 1.0)  # flat profile: d2 P0 = 0
    assert np.allclose(res.residual, expected, rtol=1e-12)
