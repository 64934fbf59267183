"""Compiled kernel vs pure-NumPy fallback: bit-identical trajectories."""

import numpy as np
import pytest

from twopop import _kernel_py
from twopop.presets import twoblock_config, spheroid_config, CORE_EXPANSION_GROWTH
from twopop.solver import run

_kernel = pytest.importorskip("twopop._kernel")


@pytest.mark.parametrize("cfg", [
    twoblock_config(1.0, cells=100, t_max=0.02, snapshot_times=[0, 0.01, 0.02]),
    twoblock_config(0.05, cells=120, t_max=0.005, snapshot_times=[0, 0.005]),
    spheroid_config(CORE_EXPANSION_GROWTH, epsilon=0.1, cells=90, t_max=0.02,
                    snapshot_times=[0, 0.02]),
], ids=["twoblock-eps1", "twoblock-eps005", "spheroid"])
def test_backends_bit_identical(cfg):
    res_c = run(cfg, use_backend=_kernel)
    res_py = run(cfg, use_backend=_kernel_py)
    assert res_c.stats.steps == res_py.stats.steps
    for sc, sp in zip(res_c.snapshots, res_py.snapshots):
        assert sc.time == sp.time
        assert np.array_equal(sc.n1, sp.n1)
        assert np.array_equal(sc.n2, sp.n2)
        assert np.array_equal(sc.p, sp.p)
    assert res_c.residual_norms == res_py.residual_norms


def test_backend_selection_reports_name():
    from twopop import backend

    assert backend.BACKEND_NAME in ("compiled", "python")


def test_advance_matches_single_step():
    # one clipped step of advance() equals the public step() operation
    from twopop import TwoSpeciesState, stable_dt, step
    from twopop.presets import TWOBLOCK_GROWTH

    rng = np.random.default_rng(3)
    n1 = 0.45 * rng.random(30)
    n2 = 0.45 * rng.random(30)
    state = TwoSpeciesState(0.0, n1.copy(), n2.copy())
    eps, dx, cfl = 0.3, 0.1, 0.9
    dt = 0.5 * stable_dt(state, TWOBLOCK_GROWTH, eps, cfl, dx)
    ref, _ = step(state, TWOBLOCK_GROWTH, eps, dt, dx)

    for impl in (_kernel, _kernel_py):
        a1, a2 = n1.copy(), n2.copy()
        acc_p, acc_g = np.zeros_like(a1), np.zeros_like(a1)
        g1, g2 = TWOBLOCK_GROWTH.species1, TWOBLOCK_GROWTH.species2
        t, steps, *_ = impl.advance(
            a1, a2, acc_p, acc_g, 0.0, dt, eps, dx, cfl,
            g1.gain, g1.homeostatic_pressure, g2.gain, g2.homeostatic_pressure,
            TWOBLOCK_GROWTH.growth_bound, 0,
        )
        assert steps == 1
        assert t == dt
        assert np.array_equal(a1, ref.n1)
        assert np.array_equal(a2, ref.n2)
