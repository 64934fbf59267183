"""Constitutive laws: singular pressure, nonlinear diffusivity, linear growth.

Pressure law   p = P(n) = eps * n / (1 - n)  on 0 <= n < 1,
with exact inverse n = p / (eps + p).  The summed density obeys a
degenerate nonlinear diffusion equation whose diffusivity is
H'(n) = n P'(n) = eps * n / (1 - n)^2; its primitive H drives the
explicit-step stability bound.

Growth laws are linear, G(p) = gain * (homeostatic_pressure - p):
strictly decreasing with a single root.  Each simulation carries a pair
of growth models, one per species; derived bounds (sup |G|, worst death
rate, minimal slope) are computed over [0, max homeostatic pressure].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _check_density(n) -> None:
    if np.any(np.asarray(n) < 0.0) or np.any(np.asarray(n) >= 1.0):
        raise ValueError("density must satisfy 0 <= n < 1")


def _check_epsilon(epsilon: float) -> None:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")


def pressure(n, epsilon: float):
    """p = eps * n / (1 - n); strictly increasing, p(0) = 0."""
    _check_epsilon(epsilon)
    _check_density(n)
    return epsilon * n / (1.0 - n)


def density_of_pressure(p, epsilon: float):
    """Exact inverse of :func:`pressure`: n = p / (eps + p)."""
    _check_epsilon(epsilon)
    if np.any(np.asarray(p) < 0.0):
        raise ValueError("pressure must be nonnegative")
    return p / (epsilon + p)


def diffusion_slope(n, epsilon: float):
    """Local diffusivity H'(n) = n P'(n) = eps * n / (1 - n)^2."""
    _check_epsilon(epsilon)
    _check_density(n)
    return epsilon * n / ((1.0 - n) * (1.0 - n))


def diffusion_primitive(n, epsilon: float):
    """H(n) = integral_0^n u P'(u) du = P(n) - eps*ln(P(n)+eps) + eps*ln(eps)."""
    p = pressure(n, epsilon)
    return p - epsilon * np.log(p + epsilon) + epsilon * math.log(epsilon)


def packing_density(homeostatic_pressure: float, epsilon: float) -> float:
    """Density at which the pressure reaches its homeostatic value.

    This is the maximal packing density P_M / (eps + P_M); it converges to 1
    as eps -> 0.
    """
    _check_epsilon(epsilon)
    return homeostatic_pressure / (epsilon + homeostatic_pressure)


@dataclass(frozen=True)
class GrowthModel:
    """Linear growth law G(p) = gain * (homeostatic_pressure - p).

    Contract (checked by :func:`validate_hypotheses`, not at construction):
    gain > 0 and homeostatic_pressure > 0, so G is strictly decreasing,
    vanishes exactly at the homeostatic pressure and is negative above it.
    """

    gain: float
    homeostatic_pressure: float

    def rate(self, p):
        if np.any(np.asarray(p) < 0.0):
            raise ValueError("pressure must be nonnegative")
        return self.gain * (self.homeostatic_pressure - p)


def growth_eval(model: GrowthModel, p):
    """Growth rate at pressure p; negative above the homeostatic pressure."""
    return model.rate(p)


@dataclass(frozen=True)
class GrowthPair:
    """Growth models of the two species plus the derived hypothesis bounds."""

    species1: GrowthModel
    species2: GrowthModel

    @property
    def pressure_cap(self) -> float:
        """Largest homeostatic pressure of the pair; bounds the pressure after a transient."""
        return max(self.species1.homeostatic_pressure, self.species2.homeostatic_pressure)

    @property
    def growth_bound(self) -> float:
        """sup over [0, pressure_cap] of |G_i|, over both species."""
        cap = self.pressure_cap
        return max(
            m.gain * max(m.homeostatic_pressure, cap - m.homeostatic_pressure)
            for m in (self.species1, self.species2)
        )

    @property
    def death_bound(self) -> float:
        """Worst death rate: max(0, -inf over [0, pressure_cap] of G_i)."""
        cap = self.pressure_cap
        return max(
            0.0,
            max(m.gain * (cap - m.homeostatic_pressure) for m in (self.species1, self.species2)),
        )

    @property
    def min_slope(self) -> float:
        """Minimal |G'| over both species (the gains, for the linear family)."""
        return min(self.species1.gain, self.species2.gain)

    def packing1(self, epsilon: float) -> float:
        return packing_density(self.species1.homeostatic_pressure, epsilon)

    def packing2(self, epsilon: float) -> float:
        return packing_density(self.species2.homeostatic_pressure, epsilon)


@dataclass(frozen=True)
class HypothesisClause:
    name: str
    status: str  # "pass" | "warn" | "fail"
    detail: str


@dataclass(frozen=True)
class HypothesisReport:
    clauses: tuple[HypothesisClause, ...]
    constants: dict

    @property
    def failures(self) -> tuple[HypothesisClause, ...]:
        return tuple(c for c in self.clauses if c.status == "fail")

    @property
    def warnings(self) -> tuple[HypothesisClause, ...]:
        return tuple(c for c in self.clauses if c.status == "warn")

    def format(self) -> str:
        lines = ["hypothesis check:"]
        for c in self.clauses:
            lines.append(f"  [{c.status:4s}] {c.name}: {c.detail}")
        lines.append("constants:")
        for k, v in self.constants.items():
            lines.append(f"  {k} = {v:.6g}")
        return "\n".join(lines)


def validate_hypotheses(pair: GrowthPair, epsilon: float, initial_state) -> HypothesisReport:
    """Check the growth and initial-data hypotheses; reporting only, never raises.

    Warnings are tolerated (the canonical two-block data starts with pressure
    far above the homeostatic cap, so the theoretical bounds only hold after a
    transient).  Failures mark states the solver cannot run from; callers
    abort on them.
    """
    clauses: list[HypothesisClause] = []

    def add(name, ok, detail, warn_only=False):
        status = "pass" if ok else ("warn" if warn_only else "fail")
        clauses.append(HypothesisClause(name, status, detail))

    g1, g2 = pair.species1, pair.species2
    add(
        "growth monotonicity",
        g1.gain > 0 and g2.gain > 0,
        f"gains ({g1.gain:g}, {g2.gain:g}) must be positive so both G are strictly decreasing",
    )
    add(
        "homeostatic pressures",
        g1.homeostatic_pressure > 0 and g2.homeostatic_pressure > 0,
        f"roots ({g1.homeostatic_pressure:g}, {g2.homeostatic_pressure:g}) must be positive",
    )
    add("epsilon", epsilon > 0, f"stiffness epsilon = {epsilon:g} must be positive")

    n1 = np.asarray(initial_state.n1)
    n2 = np.asarray(initial_state.n2)
    total = n1 + n2
    add(
        "initial nonnegativity",
        bool(n1.min() >= 0.0 and n2.min() >= 0.0),
        f"min densities ({n1.min():.3g}, {n2.min():.3g})",
    )
    saturated = bool(total.max() >= 1.0)
    add(
        "initial density below saturation",
        not saturated,
        f"max total density {total.max():.6g} (must be < 1)",
    )

    floor = float(total.min())
    add(
        "positive initial floor",
        floor > 0.0,
        f"min total density {floor:.3g}; the exponential lower bound needs a positive floor",
        warn_only=True,
    )

    constants = {
        "pressure_cap": pair.pressure_cap,
        "growth_bound": pair.growth_bound,
        "death_bound": pair.death_bound,
        "min_slope": pair.min_slope,
        "initial_floor": floor,
    }
    if epsilon > 0:
        constants["packing1"] = pair.packing1(epsilon)
        constants["packing2"] = pair.packing2(epsilon)

    if not saturated and epsilon > 0:
        p_ini = float(pressure(total, epsilon).max())
        constants["max_initial_pressure"] = p_ini
        add(
            "initial pressure below cap",
            p_ini <= pair.pressure_cap,
            f"max initial pressure {p_ini:.6g} vs cap {pair.pressure_cap:g}; "
            "bounds hold only after a transient when violated",
            warn_only=True,
        )

    overlap = float((n1 * n2).max())
    add(
        "initial segregation",
        overlap == 0.0,
        f"max n1*n2 = {overlap:.3g}",
        warn_only=True,
    )
    flat_edges = bool(
        n1.size >= 2
        and total[0] == total[1]
        and total[-1] == total[-2]
    )
    add(
        "flat initial data at boundaries",
        flat_edges,
        "zero-flux boundaries expect a flat initial profile at the edges",
        warn_only=True,
    )

    return HypothesisReport(tuple(clauses), constants)
