"""Closed-form Hele-Shaw spheroid: matched pressure profile and interface ODE.

In the stiff limit the saturated tissue fills (-L, L) with an inner core
|x| <= R1 of species 1 and an outer ring of species 2.  With linear growth
G_i(p) = g_i (P_i - p), the quasi-static pressure solves -p'' = G_i(p) on
each region with p'(0) = 0 (symmetry) and p'(+-L) = 0 (walls), which gives
the matched two-branch profile

    p(x) = P1 + A cosh(sqrt(g1) x),          |x| <= R1,
    p(x) = P2 + C cosh(sqrt(g2) (|x| - L)),  R1 < |x| <= L,

with amplitudes fixed by continuity and C^1 matching at |x| = R1:

    A = (P1 - P2) sqrt(g2) sinh(sqrt(g2)(R1 - L)) / lam,
    C = (P1 - P2) sqrt(g1) sinh(sqrt(g1) R1) / lam,
    lam = sqrt(g1) cosh(sqrt(g2)(R1 - L)) sinh(sqrt(g1) R1)
        - sqrt(g2) sinh(sqrt(g2)(R1 - L)) cosh(sqrt(g1) R1).

The interface moves with the local Darcy velocity, R1' = -p'(R1), evaluated
from the matched profile (the two one-sided derivatives agree), so

    R1' = -sqrt(g1 g2) (P1 - P2) sinh(sqrt(g2)(R1 - L)) sinh(sqrt(g1) R1) / lam,

whose sign equals sign(P1 - P2) on 0 < R1 < L (lam > 0 there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateProfileError

EDGE_MARGIN = 1e-3  # integration halts when R1 leaves (EDGE_MARGIN, L - EDGE_MARGIN)


@dataclass(frozen=True)
class SpheroidParams:
    """Growth gains, homeostatic pressures, domain half-length, interface radius."""

    g1: float
    g2: float
    p1: float
    p2: float
    half_length: float
    radius: float

    def validate(self) -> None:
        for name in ("g1", "g2", "p1", "p2", "half_length", "radius"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.radius >= self.half_length:
            raise ValueError(
                f"radius {self.radius} must be strictly inside the domain "
                f"(half_length {self.half_length})"
            )


@dataclass(frozen=True)
class OracleProfile:
    """Matched two-branch pressure profile; branch values agree to C^1 at the interface."""

    params: SpheroidParams
    amp_inner: float
    amp_outer: float
    matching_det: float

    def pressure(self, x):
        pr = self.params
        ax = np.abs(np.asarray(x, dtype=float))
        inner = pr.p1 + self.amp_inner * np.cosh(math.sqrt(pr.g1) * ax)
        outer = pr.p2 + self.amp_outer * np.cosh(math.sqrt(pr.g2) * (ax - pr.half_length))
        return np.where(ax <= pr.radius, inner, outer)

    def pressure_inner(self, x):
        pr = self.params
        return pr.p1 + self.amp_inner * np.cosh(math.sqrt(pr.g1) * np.asarray(x, dtype=float))

    def pressure_outer(self, x):
        pr = self.params
        ax = np.abs(np.asarray(x, dtype=float))
        return pr.p2 + self.amp_outer * np.cosh(math.sqrt(pr.g2) * (ax - pr.half_length))

    def derivative_inner(self, x):
        pr = self.params
        s1 = math.sqrt(pr.g1)
        return self.amp_inner * s1 * np.sinh(s1 * np.asarray(x, dtype=float))

    def derivative_outer(self, x):
        pr = self.params
        s2 = math.sqrt(pr.g2)
        x = np.asarray(x, dtype=float)
        return np.sign(x) * self.amp_outer * s2 * np.sinh(s2 * (np.abs(x) - pr.half_length))


def build_profile(params: SpheroidParams) -> OracleProfile:
    """Matched profile for the given parameters; degenerate matching raises."""
    params.validate()
    s1 = math.sqrt(params.g1)
    s2 = math.sqrt(params.g2)
    sh2 = math.sinh(s2 * (params.radius - params.half_length))
    ch2 = math.cosh(s2 * (params.radius - params.half_length))
    sh1 = math.sinh(s1 * params.radius)
    ch1 = math.cosh(s1 * params.radius)
    lam = s1 * ch2 * sh1 - s2 * sh2 * ch1
    if abs(lam) < 1e-14:
        raise DegenerateProfileError(f"matching determinant {lam:.3g} is degenerate")
    contrast = params.p1 - params.p2
    return OracleProfile(
        params=params,
        amp_inner=contrast * s2 * sh2 / lam,
        amp_outer=contrast * s1 * sh1 / lam,
        matching_det=lam,
    )


def interface_velocity(params: SpheroidParams) -> float:
    """dR1/dt = -p'(R1) from the matched profile (either one-sided derivative)."""
    profile = build_profile(params)
    s1 = math.sqrt(params.g1)
    return float(-profile.amp_inner * s1 * math.sinh(s1 * params.radius))


@dataclass
class InterfaceTrack:
    """Sampled interface radii R1(k * dt); may halt early at the domain edge."""

    times: np.ndarray
    radii: np.ndarray
    halted: bool
    halt_reason: str | None

    def radius_at(self, t: float) -> float:
        idx = np.nonzero(np.abs(self.times - t) <= 1e-9)[0]
        if idx.size == 0:
            raise KeyError(f"t={t} is not a sample time (halted={self.halted})")
        return float(self.radii[idx[0]])


def integrate_interface(params: SpheroidParams, t_max: float, dt_ode: float) -> InterfaceTrack:
    """Integrate R1' with the classical fourth-order one-step method.

    Samples land on multiples of dt_ode.  Integration stops early, with a
    reason, once the radius leaves (EDGE_MARGIN, L - EDGE_MARGIN).
    """
    params.validate()
    if dt_ode <= 0:
        raise ValueError("dt_ode must be positive")

    def vel(r: float) -> float:
        return interface_velocity(replace(params, radius=r))

    lo, hi = EDGE_MARGIN, params.half_length - EDGE_MARGIN
    n_steps = int(math.floor(t_max / dt_ode + 1e-9))
    times = [0.0]
    radii = [params.radius]
    halted = False
    reason = None
    r = params.radius
    for k in range(n_steps):
        if not lo < r < hi:
            halted = True
            reason = f"interface reached the domain edge (R1={r:.6g})"
            break
        k1 = vel(r)
        k2 = vel(r + 0.5 * dt_ode * k1)
        k3 = vel(r + 0.5 * dt_ode * k2)
        k4 = vel(r + dt_ode * k3)
        r = r + (dt_ode / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        times.append((k + 1) * dt_ode)
        radii.append(r)
    if not halted and not lo < r < hi:
        halted = True
        reason = f"interface reached the domain edge (R1={r:.6g})"
    return InterfaceTrack(np.array(times), np.array(radii), halted, reason)


def matching_gaps(profile: OracleProfile) -> tuple[float, float]:
    """(continuity gap, one-sided derivative gap) of the two branches at R1."""
    r = profile.params.radius
    c0 = abs(float(profile.pressure_inner(r)) - float(profile.pressure_outer(r)))
    c1 = abs(float(profile.derivative_inner(r)) - float(profile.derivative_outer(r)))
    return c0, c1


def branch_residual(profile: OracleProfile, h: float, samples: int = 33) -> float:
    """Max centered-difference residual |-p'' - G(p)| over both branches.

    Sample points keep the stencil strictly inside one branch; the residual
    decays like h^2 for the correct profile, which is the self-test run
    before the profile is trusted as ground truth.
    """
    pr = profile.params
    worst = 0.0
    for lo, hi, gain, root, branch in (
        (0.0, pr.radius - 2.0 * h, pr.g1, pr.p1, profile.pressure_inner),
        (pr.radius + 2.0 * h, pr.half_length - h, pr.g2, pr.p2, profile.pressure_outer),
    ):
        if hi <= lo:
            raise ValueError(f"stencil width {h} too large for branch [{lo}, {hi}]")
        x = np.linspace(lo, hi, samples)
        d2 = (branch(x - h) - 2.0 * branch(x) + branch(x + h)) / (h * h)
        res = np.abs(-d2 - gain * (root - branch(x)))
        worst = max(worst, float(res.max()))
    return worst


def limit_profile(params: SpheroidParams, radius: float, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stiff-limit reference on a grid: indicator densities and matched pressure.

    n1 = 1 on |x| <= radius, n2 = 1 elsewhere in the domain; the pair is
    complementary (n1 + n2 = 1) and exactly segregated.
    """
    profile = build_profile(replace(params, radius=radius))
    x = np.asarray(x, dtype=float)
    n1 = (np.abs(x) <= radius).astype(float)
    n2 = 1.0 - n1
    return n1, n2, profile.pressure(x)
