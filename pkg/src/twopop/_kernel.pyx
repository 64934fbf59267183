# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled time-stepping kernel (hot loop).

Mirrors `_kernel_py.advance` expression by expression: same operand order,
same association, no reordering, so trajectories are bit-identical across
backends (the extension is built with -ffp-contract=off).
"""

import numpy as np

from .errors import StabilityError

from libc.math cimport fabs, fmax, fmin, INFINITY

BACKEND_NAME = "compiled"

cdef double TINY = 1e-30
cdef double NEG_TOL = -1e-12
cdef double OVERLAP_TOL = 1e-12


def advance(double[::1] n1, double[::1] n2,
            double[::1] pressure_integral, double[::1] growth_integral,
            double t, double t_target,
            double epsilon, double dx, double cfl,
            double g1, double pm1, double g2, double pm2,
            double growth_bound, long step_offset=0):
    """Advance the state in place from t to t_target; see `_kernel_py.advance`."""
    cdef Py_ssize_t m = n1.shape[0]
    cdef double[::1] p = np.empty(m)
    cdef double[::1] u = np.empty(m + 1)
    cdef double[::1] f1 = np.empty(m + 1)
    cdef double[::1] f2 = np.empty(m + 1)

    cdef long steps = 0
    cdef double max_ledger = 0.0
    cdef double min_species = INFINITY
    cdef double max_total = -INFINITY
    cdef long max_overlap_cells = 0
    cdef double max_overlap_mass = 0.0

    cdef Py_ssize_t j, f
    cdef double nn, pj, hpj, maxhp, uf, au, maxu, dt, b, remaining
    cdef double up, um, r, gv1, gv2, a1, a2, tot, prod, t_next, rc
    cdef double mass_before, mass_after, reaction, osum, den, rel, omass
    cdef bint clipped
    cdef long ocells

    while t < t_target:
        maxhp = 0.0
        for j in range(m):
            nn = n1[j] + n2[j]
            pj = epsilon * nn / (1.0 - nn)
            p[j] = pj
            hpj = epsilon * nn / ((1.0 - nn) * (1.0 - nn))
            if hpj > maxhp:
                maxhp = hpj
        u[0] = 0.0
        u[m] = 0.0
        maxu = 0.0
        for f in range(1, m):
            uf = -(p[f] - p[f - 1]) / dx
            u[f] = uf
            au = fabs(uf)
            if au > maxu:
                maxu = au

        dt = dx * dx / (2.0 * maxhp + TINY)
        b = dx / (maxu + TINY)
        if b < dt:
            dt = b
        b = 1.0 / (growth_bound + TINY)
        if b < dt:
            dt = b
        dt = cfl * dt
        remaining = t_target - t
        clipped = dt >= remaining
        if clipped:
            dt = remaining
        t_next = t_target if clipped else t + dt

        f1[0] = 0.0
        f1[m] = 0.0
        f2[0] = 0.0
        f2[m] = 0.0
        for f in range(1, m):
            uf = u[f]
            up = fmax(uf, 0.0)
            um = fmin(uf, 0.0)
            f1[f] = up * n1[f - 1] + um * n1[f]
            f2[f] = up * n2[f - 1] + um * n2[f]

        r = dt / dx
        mass_before = 0.0
        mass_after = 0.0
        reaction = 0.0
        osum = 0.0
        ocells = 0
        for j in range(m):
            pj = p[j]
            gv1 = g1 * (pm1 - pj)
            gv2 = g2 * (pm2 - pj)
            a1 = (n1[j] - r * (f1[j + 1] - f1[j])) + dt * (n1[j] * gv1)
            a2 = (n2[j] - r * (f2[j + 1] - f2[j])) + dt * (n2[j] * gv2)
            if a1 < NEG_TOL:
                raise StabilityError(1, j, step_offset + steps, t_next, a1, epsilon)
            if a2 < NEG_TOL:
                raise StabilityError(2, j, step_offset + steps, t_next, a2, epsilon)
            tot = a1 + a2
            if tot >= 1.0:
                raise StabilityError("total", j, step_offset + steps, t_next, tot, epsilon)
            rc = n1[j] * gv1 + n2[j] * gv2
            pressure_integral[j] += dt * pj
            growth_integral[j] += dt * rc
            mass_before += n1[j] + n2[j]
            mass_after += a1 + a2
            reaction += rc
            prod = a1 * a2
            if prod > OVERLAP_TOL:
                ocells += 1
            osum += prod
            if a1 < min_species:
                min_species = a1
            if a2 < min_species:
                min_species = a2
            if tot > max_total:
                max_total = tot
            n1[j] = a1
            n2[j] = a2

        den = mass_before if mass_before > TINY else TINY
        rel = fabs(mass_after - mass_before - dt * reaction) / den
        if rel > max_ledger:
            max_ledger = rel
        omass = dx * osum
        if ocells > max_overlap_cells:
            max_overlap_cells = ocells
        if omass > max_overlap_mass:
            max_overlap_mass = omass
        steps += 1
        t = t_next

    return t, steps, max_ledger, min_species, max_total, max_overlap_cells, max_overlap_mass
