"""Pure-NumPy time-stepping kernel (fallback backend).

This module is the reference semantics for one explicit upwind step and for
the inner run loop; the compiled extension `_kernel` reproduces the exact
floating-point arithmetic (same expressions, same association, no FMA), so a
trajectory is bit-identical under either backend.
"""

from __future__ import annotations

import numpy as np

from .errors import StabilityError

TINY = 1e-30  # guards empty/zero cases in the time-step bounds
NEG_TOL = -1e-12  # densities below this are a stability failure
OVERLAP_TOL = 1e-12  # cells with n1*n2 above this count as mixed

BACKEND_NAME = "python"


def velocity_fields(n1, n2, epsilon, dx):
    """Total density, cell pressure, and face velocities of a state.

    Faces are indexed 0..M; boundary faces carry velocity 0 (zero-flux walls).
    """
    n = n1 + n2
    p = epsilon * n / (1.0 - n)
    u = np.empty(n.size + 1)
    u[0] = 0.0
    u[-1] = 0.0
    u[1:-1] = -(p[1:] - p[:-1]) / dx
    return n, p, u


def stable_dt_arrays(n, p, u, epsilon, dx, cfl, growth_bound):
    """Adaptive step from the three explicit-stability bounds.

    diffusion:  dx^2 / (2 max H'(n)),  H'(n) = eps n / (1-n)^2
    advection:  dx / max |u|
    reaction:   1 / sup |G|
    """
    hp = epsilon * n / ((1.0 - n) * (1.0 - n))
    maxhp = float(hp.max()) if hp.size else 0.0
    maxu = float(np.abs(u).max())
    return cfl * min(
        dx * dx / (2.0 * maxhp + TINY),
        dx / (maxu + TINY),
        1.0 / (growth_bound + TINY),
    )


def upwind_fluxes(n1, n2, u):
    """Per-species upwind face fluxes; boundary faces carry zero flux."""
    up = np.maximum(u, 0.0)
    um = np.minimum(u, 0.0)
    f1 = np.empty_like(u)
    f2 = np.empty_like(u)
    f1[0] = f1[-1] = 0.0
    f2[0] = f2[-1] = 0.0
    f1[1:-1] = up[1:-1] * n1[:-1] + um[1:-1] * n1[1:]
    f2[1:-1] = up[1:-1] * n2[:-1] + um[1:-1] * n2[1:]
    return f1, f2


def apply_update(n1, n2, p, f1, f2, dt, dx, g1, pm1, g2, pm2):
    """Forward-Euler update: conservative flux difference plus explicit reaction.

    Returns the new densities and the per-cell reaction field n1 G1 + n2 G2
    evaluated on the old state.
    """
    g1v = g1 * (pm1 - p)
    g2v = g2 * (pm2 - p)
    r = dt / dx
    n1n = (n1 - r * (f1[1:] - f1[:-1])) + dt * (n1 * g1v)
    n2n = (n2 - r * (f2[1:] - f2[:-1])) + dt * (n2 * g2v)
    return n1n, n2n, n1 * g1v + n2 * g2v


def _check_admissible(n1n, n2n, step, time, epsilon):
    if float(n1n.min()) < NEG_TOL:
        j = int(np.argmin(n1n))
        raise StabilityError(1, j, step, time, float(n1n[j]), epsilon)
    if float(n2n.min()) < NEG_TOL:
        j = int(np.argmin(n2n))
        raise StabilityError(2, j, step, time, float(n2n[j]), epsilon)
    total = n1n + n2n
    if float(total.max()) >= 1.0:
        j = int(np.argmax(total))
        raise StabilityError("total", j, step, time, float(total[j]), epsilon)
    return total


def advance(n1, n2, pressure_integral, growth_integral, t, t_target,
            epsilon, dx, cfl, g1, pm1, g2, pm2, growth_bound, step_offset=0):
    """Advance the state in place from t to t_target with adaptive steps.

    The final step is clipped so the trajectory lands exactly on t_target.
    pressure_integral and growth_integral accumulate the per-cell time
    integrals of p and of n1 G1(p) + n2 G2(p) at step resolution (the
    snapshot cadence is far too coarse for these near the stiff limit).
    Returns (t, steps, max_ledger_rel, min_species, max_total,
    max_overlap_cells, max_overlap_mass); extrema are over post-update states
    (+-inf when no step was taken).
    """
    steps = 0
    max_ledger = 0.0
    min_species = np.inf
    max_total = -np.inf
    max_overlap_cells = 0
    max_overlap_mass = 0.0

    while t < t_target:
        n, p, u = velocity_fields(n1, n2, epsilon, dx)
        dt = stable_dt_arrays(n, p, u, epsilon, dx, cfl, growth_bound)
        remaining = t_target - t
        clipped = dt >= remaining
        if clipped:
            dt = remaining

        f1, f2 = upwind_fluxes(n1, n2, u)
        n1n, n2n, reaction_cells = apply_update(n1, n2, p, f1, f2, dt, dx, g1, pm1, g2, pm2)
        t_next = t_target if clipped else t + dt
        total = _check_admissible(n1n, n2n, step_offset + steps, t_next, epsilon)
        pressure_integral += dt * p
        growth_integral += dt * reaction_cells

        reaction = float(np.sum(reaction_cells))
        mass_before = float(np.sum(n))
        mass_after = float(np.sum(n1n + n2n))
        den = mass_before if mass_before > TINY else TINY
        rel = abs(mass_after - mass_before - dt * reaction) / den
        if rel > max_ledger:
            max_ledger = rel

        prod = n1n * n2n
        cells = int(np.count_nonzero(prod > OVERLAP_TOL))
        omass = dx * float(np.sum(prod))
        if cells > max_overlap_cells:
            max_overlap_cells = cells
        if omass > max_overlap_mass:
            max_overlap_mass = omass
        m = float(min(n1n.min(), n2n.min()))
        if m < min_species:
            min_species = m
        mt = float(total.max())
        if mt > max_total:
            max_total = mt

        n1[:] = n1n
        n2[:] = n2n
        steps += 1
        t = t_next

    return t, steps, max_ledger, min_species, max_total, max_overlap_cells, max_overlap_mass
