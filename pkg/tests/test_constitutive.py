"""Pressure law, diffusivity, growth models, hypothesis validation."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twopop import (
    GrowthModel,
    GrowthPair,
    density_of_pressure,
    diffusion_slope,
    growth_eval,
    init_from_preset,
    make_grid,
    packing_density,
    pressure,
    validate_hypotheses,
)
from twopop.constitutive import diffusion_primitive
from twopop.presets import TWOBLOCK_GROWTH


def test_pressure_values():
    assert pressure(0.5, 1.0) == pytest.approx(1.0, rel=1e-15)
    assert pressure(0.0, 0.37) == 0.0
    assert pressure(2.0 / 3.0, 1.0) == pytest.approx(2.0, rel=1e-14)


def test_pressure_domain_errors():
    with pytest.raises(ValueError):
        pressure(-0.1, 1.0)
    with pytest.raises(ValueError):
        pressure(1.0, 1.0)
    with pytest.raises(ValueError):
        pressure(0.5, 0.0)


def test_density_of_pressure_values():
    assert density_of_pressure(2.0, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert density_of_pressure(0.0, 0.01) == 0.0
    assert density_of_pressure(1.0, 0.001) == pytest.approx(1.0 / 1.001, rel=1e-15)
    with pytest.raises(ValueError):
        density_of_pressure(-1.0, 1.0)


@pytest.mark.parametrize("eps", [1.0, 0.1, 0.01, 0.001])
def test_pressure_inverse_roundtrip(eps):
    n = np.linspace(0.0, 0.999, 400)
    back = density_of_pressure(pressure(n, eps), eps)
    assert np.abs(back - n).max() <= 1e-14


@given(
    st.floats(min_value=0.0, max_value=0.995),
    st.floats(min_value=1e-4, max_value=0.995),
    st.floats(min_value=1e-3, max_value=10.0),
)
def test_pressure_strictly_increasing(n, gap, eps):
    hi = min(n + gap, 0.9995)
    if hi <= n:
        return
    assert pressure(hi, eps) > pressure(n, eps)


def test_diffusion_slope_values():
    assert diffusion_slope(0.5, 1.0) == pytest.approx(2.0, rel=1e-15)
    assert diffusion_slope(0.0, 0.2) == 0.0
    assert diffusion_slope(2.0 / 3.0, 1.0) == pytest.approx(6.0, rel=1e-13)


@pytest.mark.parametrize("eps", [1.0, 0.05, 0.001])
def test_diffusion_slope_is_derivative_of_primitive(eps):
    # centered difference of H(n) matches n P'(n) to O(h^2)
    h = 1e-5
    n = np.linspace(0.1, 0.9, 33)
    fd = (diffusion_primitive(n + h, eps) - diffusion_primitive(n - h, eps)) / (2 * h)
    slope = diffusion_slope(n, eps)
    scale = np.abs(slope) + 1.0
    # third-derivative constant peaks near n = 0.9 at ~1.1e2 * h^2 relative
    assert np.max(np.abs(fd - slope) / scale) < 300 * h * h


def test_growth_eval_values():
    assert growth_eval(GrowthModel(5.0, 2.0), 0.0) == pytest.approx(10.0)
    assert growth_eval(GrowthModel(5.0, 2.0), 2.0) == 0.0
    assert growth_eval(GrowthModel(10.0, 1.0), 0.5) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        growth_eval(GrowthModel(5.0, 2.0), -0.5)


@given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=1e-3, max_value=5.0))
def test_growth_strictly_decreasing(p, dp):
    model = GrowthModel(3.0, 1.5)
    assert growth_eval(model, p + dp) < growth_eval(model, p)


def test_growth_root_is_exact():
    for gain, root in [(5.0, 2.0), (10.0, 1.0), (0.25, 7.5)]:
        assert growth_eval(GrowthModel(gain, root), root) == 0.0


def test_pair_derived_bounds():
    pair = TWOBLOCK_GROWTH
    assert pair.pressure_cap == 2.0
    assert pair.growth_bound == pytest.approx(10.0)
    assert pair.death_bound == pytest.approx(10.0)
    assert pair.min_slope == pytest.approx(5.0)
    assert packing_density(2.0, 1.0) == pytest.approx(2.0 / 3.0)
    assert pair.packing1(0.001) == pytest.approx(2.0 / 2.001, rel=1e-15)


def test_validate_twoblock_warns_on_initial_pressure():
    grid = make_grid(5.0, 500)
    state = init_from_preset(grid, "twoblock", 1.0)
    report = validate_hypotheses(TWOBLOCK_GROWTH, 1.0, state)
    assert not report.failures
    warn_names = {c.name for c in report.warnings}
    assert "initial pressure below cap" in warn_names
    # initial pressure of the 0.98 block at eps=1 is ~49, far above the cap 2
    assert report.constants["max_initial_pressure"] == pytest.approx(49.0, rel=1e-12)
    assert report.constants["min_slope"] == pytest.approx(5.0)
    assert report.constants["growth_bound"] == pytest.approx(10.0)


def test_validate_spheroid_passes_clean():
    grid = make_grid(2.5, 300)
    state = init_from_preset(grid, "spheroid", 0.01)
    report = validate_hypotheses(TWOBLOCK_GROWTH, 0.01, state)
    assert not report.failures
    assert "initial pressure below cap" not in {c.name for c in report.warnings}


def test_validate_rejects_nonpositive_gain():
    grid = make_grid(5.0, 500)
    state = init_from_preset(grid, "twoblock", 1.0)
    bad = GrowthPair(GrowthModel(-5.0, 2.0), GrowthModel(10.0, 1.0))
    report = validate_hypotheses(bad, 1.0, state)
    assert any(c.name == "growth monotonicity" for c in report.failures)
