"""Config parsing, snapshot round trips, and the command-line surface."""

import os

import numpy as np
import pytest

from twopop import ConfigError, init_from_preset, make_grid, parse_config, serialize_config
from twopop.cli import cli_main
from twopop.diagnostics import make_snapshot
from twopop.tableio import fmt_float, read_snapshot, write_snapshot

FIG1_TEXT = """
# two-block benchmark at unit stiffness
preset = twoblock
epsilon = 1
tmax = 2
growth = 5, 2, 10, 1   # rates 10(1-p/2) and 10(1-p)
snapshot_times = 0, 0.1, 0.3, 0.6, 1, 2
"""


def test_parse_fig1_like_config():
    cfg = parse_config(FIG1_TEXT)
    assert cfg.mode == "run"
    assert cfg.preset == "twoblock"
    assert cfg.epsilon == 1.0
    assert cfg.t_max == 2.0
    assert cfg.num_cells == 500 and cfg.cfl == 0.9  # defaults
    assert cfg.snapshot_times == (0.0, 0.1, 0.3, 0.6, 1.0, 2.0)
    assert cfg.growth.species1.gain == 5.0
    assert cfg.growth.species2.homeostatic_pressure == 1.0


def test_parse_default_snapshot_count():
    cfg = parse_config("preset = twoblock\nepsilon = 1\ntmax = 1.4\ngrowth = 5,2,10,1\n")
    assert len(cfg.snapshot_times) == 7
    assert cfg.snapshot_times[0] == 0.0
    assert cfg.snapshot_times[-1] == 1.4


def test_parse_errors_name_the_line():
    with pytest.raises(ConfigError, match="preset is required"):
        parse_config("")
    with pytest.raises(ConfigError, match="epsilon must be positive"):
        parse_config("preset = twoblock\nepsilon = 0\ntmax = 1\ngrowth = 5,2,10,1\n")
    with pytest.raises(ConfigError, match="line 2: unknown key"):
        parse_config("preset = twoblock\nwibble = 3\n")
    with pytest.raises(ConfigError, match="line 3: .*cannot parse"):
        parse_config("preset = twoblock\ntmax = 1\nepsilon = abc\ngrowth = 5,2,10,1\n")
    with pytest.raises(ConfigError, match="duplicate key"):
        parse_config("preset = twoblock\npreset = twoblock\n")
    with pytest.raises(ConfigError, match="expected 'key = value'"):
        parse_config("preset twoblock\n")


def test_parse_rejects_hard_hypothesis_failure():
    with pytest.raises(ConfigError, match="monotonicity"):
        parse_config("preset = twoblock\nepsilon = 1\ntmax = 1\ngrowth = -5,2,10,1\n")


def test_config_round_trip():
    for text in (
        FIG1_TEXT,
        "mode = sweep\npreset = twoblock\ngrowth = 5,2,10,1\n"
        "sweep_epsilons = 1, 0.1\nsweep_cells = 100, 50\nprobe_times = 0.5, 1.5\n",
        "mode = oracle\ngrowth = 10,4,5,2\nhalf_length = 2.5\nr0 = 0.5\ntmax = 1\n",
    ):
        cfg = parse_config(text)
        assert parse_config(serialize_config(cfg)) == cfg


def test_fmt_float_shortest_roundtrip():
    for v in (0.0, 49.0, -4.99, 0.98, 0.1, 1e-30, 2.5e16, -0.0, float("nan"), float("inf")):
        s = fmt_float(v)
        if v == v:
            assert float(s) == v
        else:
            assert s == "nan"
    assert fmt_float(49.0) == "49"
    assert fmt_float(0.0) == "0"
    assert fmt_float(-4.99) == "-4.99"


def _twoblock_snapshot(eps=1.0, cells=500):
    grid = make_grid(5.0, cells)
    state = init_from_preset(grid, "twoblock", eps)
    return make_snapshot(0.0, grid.cell_centers, state.n1, state.n2, eps)


def test_snapshot_round_trip_is_bit_exact(tmp_path):
    snap = _twoblock_snapshot()
    path = tmp_path / "snap.csv"
    write_snapshot(snap, path)
    back = read_snapshot(path)
    assert back.time == snap.time
    for attr in ("x", "n1", "n2", "p"):
        assert np.array_equal(getattr(back, attr), getattr(snap, attr))
    write_snapshot(back, tmp_path / "snap2.csv")
    assert (tmp_path / "snap.csv").read_bytes() == (tmp_path / "snap2.csv").read_bytes()


def test_snapshot_file_shape_and_first_row(tmp_path):
    snap = _twoblock_snapshot()
    path = tmp_path / "snap.csv"
    write_snapshot(snap, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x,n1,n2,p"
    # first cell: x = -4.99, density 0.98, pressure 0.98/0.02 in floats
    assert lines[1] == "0,-4.99,0.98,0,48.99999999999996"

    small = make_snapshot(0.0, *(lambda g, s: (g.cell_centers, s.n1, s.n2))(
        make_grid(1.0, 4), init_from_preset(make_grid(1.0, 4), "twoblock", 1.0)), 1.0)
    write_snapshot(small, tmp_path / "small.csv")
    assert len((tmp_path / "small.csv").read_text().splitlines()) == 5  # header + 4 cells


def test_read_snapshot_errors_name_rows(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,x,n1,n2,p\n0,1,2\n")
    with pytest.raises(ValueError, match="row 2"):
        read_snapshot(bad)
    bad.write_text("t,x,n1,n2,p\n0,0.5,0.1,0.2,zzz\n0,1.5,0.1,0.2,0.3\n")
    with pytest.raises(ValueError, match="row 2: malformed number"):
        read_snapshot(bad)
    bad.write_text("wrong,header\n")
    with pytest.raises(ValueError, match="row 1"):
        read_snapshot(bad)


def _write_cfg(tmp_path, text, name="case.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_cli_run_writes_snapshots_and_diagnostics(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path,
        "preset = twoblock\nepsilon = 1\ntmax = 0.01\ncells = 60\n"
        "growth = 5, 2, 10, 1\nsnapshots = 7\n",
    )
    out = tmp_path / "out"
    assert cli_main(["run", "--config", cfg, "--out", str(out)]) == 0
    files = sorted(os.listdir(out))
    assert files == [
        "diagnostics.csv",
        "snap_000.csv", "snap_001.csv", "snap_002.csv", "snap_003.csv",
        "snap_004.csv", "snap_005.csv", "snap_006.csv",
    ]
    header = (out / "diagnostics.csv").read_text().splitlines()[0]
    assert header == "t,zeta,overlap_max,overlap_mass,mass1,mass2,max_n,max_p,comp_residual_l1"
    assert "steps=" in capsys.readouterr().out


def test_cli_oracle_monotone_series(tmp_path, capsys):
    out = tmp_path / "oracle"
    code = cli_main([
        "oracle", "--g1", "10", "--g2", "5", "--p1", "4", "--p2", "2",
        "--L", "2.5", "--r0", "0.5", "--tmax", "1", "--out", str(out),
    ])
    assert code == 0
    rows = (out / "interface.csv").read_text().splitlines()
    assert rows[0] == "t,r1"
    radii = [float(r.split(",")[1]) for r in rows[1:]]
    assert all(b > a for a, b in zip(radii, radii[1:]))
    assert (out / "profile_initial.csv").exists()
    assert (out / "profile_final.csv").exists()


def test_cli_unknown_subcommand_fails_with_usage(capsys):
    assert cli_main(["frobnicate"]) != 0
    assert "usage" in capsys.readouterr().err.lower()


def test_cli_check_reports_hypotheses(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path,
        "preset = twoblock\nepsilon = 1\ntmax = 2\ngrowth = 5, 2, 10, 1\n",
    )
    assert cli_main(["check", "--config", cfg]) == 0
    text = capsys.readouterr().out
    assert "hypothesis check" in text
    assert "initial pressure below cap" in text
    assert "oracle self-test" in text


def test_cli_mode_mismatch_is_an_error(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path,
        "mode = sweep\npreset = twoblock\ngrowth = 5,2,10,1\n"
        "sweep_epsilons = 1\nprobe_times = 0.01\ncells = 40\n",
    )
    assert cli_main(["run", "--config", cfg]) == 1
    assert "expected run" in capsys.readouterr().err


def test_cli_sweep_outputs(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path,
        "mode = sweep\npreset = twoblock\ngrowth = 5,2,10,1\ncells = 40\n"
        "sweep_epsilons = 1, 0.5\nprobe_times = 0.02, 0.05\n",
    )
    out = tmp_path / "sweep"
    assert cli_main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    assert (out / "report.csv").exists()
    assert (out / "eps_1" / "snap_t0.02.csv").exists()
    assert (out / "eps_0.5" / "snap_t0.05.csv").exists()
    assert (out / "reference_t0.05.csv").exists()
    report = (out / "report.csv").read_text().splitlines()
    assert report[0].startswith("epsilon,cells,plateau_left,plateau_right")
