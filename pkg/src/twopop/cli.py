"""Command-line surface: run, sweep, oracle, check."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import oracle
from .config import hypothesis_report, parse_config
from .diagnostics import snapshot_from_table
from .errors import ConfigError, DegenerateProfileError, StabilityError
from .solver import run
from .sweep import convergence_table, run_sweep
from .tableio import (
    ensure_dir,
    fmt_float,
    probe_filename,
    snapshot_filename,
    write_diagnostics,
    write_snapshot,
    write_sweep_report,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twopop",
        description="Two-population tissue growth: finite-volume runs, stiff-limit sweeps, "
        "free-boundary oracle, hypothesis checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one simulation from a config file")
    p_run.add_argument("--config", required=True, help="path to a key = value config file")
    p_run.add_argument("--out", help="output directory (default: config outdir or out/<name>)")

    p_sweep = sub.add_parser("sweep", help="epsilon-ladder convergence study")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", help="output directory")

    p_oracle = sub.add_parser("oracle", help="integrate the spheroid interface law")
    p_oracle.add_argument("--g1", type=float, required=True, help="inner growth gain")
    p_oracle.add_argument("--g2", type=float, required=True, help="outer growth gain")
    p_oracle.add_argument("--p1", type=float, required=True, help="inner homeostatic pressure")
    p_oracle.add_argument("--p2", type=float, required=True, help="outer homeostatic pressure")
    p_oracle.add_argument("--L", type=float, required=True, dest="half_length")
    p_oracle.add_argument("--r0", type=float, required=True, help="initial interface radius")
    p_oracle.add_argument("--tmax", type=float, required=True)
    p_oracle.add_argument("--dt", type=float, default=1e-3, help="integrator step (default 1e-3)")
    p_oracle.add_argument("--cells", type=int, default=500, help="profile sampling resolution")
    p_oracle.add_argument("--out", help="output directory")

    p_check = sub.add_parser("check", help="hypothesis report and oracle self-test")
    p_check.add_argument("--config", help="optional config to validate")
    return parser


def cli_main(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        return _cmd_check(args)
    except (ConfigError, DegenerateProfileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


def _load_config(path, expected_mode):
    with open(path) as fh:
        cfg = parse_config(fh.read())
    if cfg.mode != expected_mode:
        raise ConfigError(f"{path}: config has mode={cfg.mode}, expected {expected_mode}")
    return cfg


def _outdir(args, cfg, default_stem: str) -> str:
    out = args.out or cfg.outdir or os.path.join("out", default_stem)
    ensure_dir(out)
    return out


def _cmd_run(args) -> int:
    cfg = _load_config(args.config, "run")
    stem = os.path.splitext(os.path.basename(args.config))[0]
    out = _outdir(args, cfg, stem)
    result = run(cfg)
    for i, snap in enumerate(result.snapshots):
        write_snapshot(snap, os.path.join(out, snapshot_filename(i)))
    write_diagnostics(result.diagnostics, result.residual_norms, os.path.join(out, "diagnostics.csv"))
    s = result.stats
    zeta = result.final.interface
    print(f"wrote {len(result.snapshots)} snapshots + diagnostics to {out}")
    print(
        f"steps={s.steps} wall={s.wall_time:.3f}s backend={s.backend} "
        f"mass_ledger_max={s.max_ledger_rel:.3e}"
    )
    print(
        f"final t={result.final.time:g} interface="
        + ("undefined" if zeta is None else f"{zeta:.6g}")
        + f" max_n={s.max_total_density:.6g}"
    )
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config, "sweep")
    stem = os.path.splitext(os.path.basename(args.config))[0]
    out = _outdir(args, cfg, stem)
    result = run_sweep(cfg)
    write_sweep_report(result, os.path.join(out, "report.csv"))
    for rec in result.records:
        sub = os.path.join(out, f"eps_{fmt_float(rec.epsilon)}")
        ensure_dir(sub)
        for t, snap in zip(result.probe_times, rec.probe_snapshots):
            write_snapshot(snap, os.path.join(sub, probe_filename(t)))
    for t, snap in zip(result.probe_times, result.reference_snapshots):
        write_snapshot(snap, os.path.join(out, f"reference_t{fmt_float(t)}.csv"))
    print(f"wrote sweep report and {len(result.records)} rungs to {out}")
    _print_table(result)
    if result.aborted:
        print(f"sweep aborted early: {result.aborted}", file=sys.stderr)
        return 1
    return 0


def _print_table(result) -> None:
    rows = convergence_table(result)
    print("epsilon    plateau_L  plateau_R  l1_dist    residual   res_ratio")
    for row in rows:
        ratio = "-" if row["residual_ratio"] is None else f"{row['residual_ratio']:.3f}"
        print(
            f"{row['epsilon']:<10g} {row['plateau_left']:<10.5f} {row['plateau_right']:<10.5f} "
            f"{row['l1_distance']:<10.4g} {row['residual_l1']:<10.4g} {ratio}"
        )


def _cmd_oracle(args) -> int:
    params = oracle.SpheroidParams(
        g1=args.g1, g2=args.g2, p1=args.p1, p2=args.p2,
        half_length=args.half_length, radius=args.r0,
    )
    track = oracle.integrate_interface(params, args.tmax, args.dt)
    out = args.out or os.path.join("out", "oracle")
    ensure_dir(out)
    with open(os.path.join(out, "interface.csv"), "w") as fh:
        fh.write("t,r1\n")
        for t, r in zip(track.times, track.radii):
            fh.write(f"{fmt_float(t)},{fmt_float(r)}\n")
    x = np.linspace(-args.half_length, args.half_length, args.cells + 1)
    x = 0.5 * (x[:-1] + x[1:])
    for label, radius, t in (
        ("profile_initial.csv", track.radii[0], track.times[0]),
        ("profile_final.csv", track.radii[-1], track.times[-1]),
    ):
        n1, n2, p = oracle.limit_profile(params, float(radius), x)
        write_snapshot(snapshot_from_table(float(t), x, n1, n2, p), os.path.join(out, label))
    print(f"wrote interface track ({len(track.times)} samples) and profiles to {out}")
    print(
        f"R1: {track.radii[0]:.6g} -> {track.radii[-1]:.6g} over t=[0, {track.times[-1]:g}]"
        + (f" (halted: {track.halt_reason})" if track.halted else "")
    )
    return 0


def _cmd_check(args) -> int:
    ok = True
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
        try:
            cfg = parse_config(text)
            print(hypothesis_report(cfg).format())
        except ConfigError as exc:
            print(f"config validation failed: {exc}", file=sys.stderr)
            ok = False

    params = oracle.SpheroidParams(g1=10.0, g2=5.0, p1=1.0, p2=2.0, half_length=2.5, radius=0.5)
    profile = oracle.build_profile(params)
    c0, c1 = oracle.matching_gaps(profile)
    res_h = oracle.branch_residual(profile, 1e-2)
    res_h2 = oracle.branch_residual(profile, 5e-3)
    ratio = res_h / res_h2
    print("oracle self-test (matched spheroid profile):")
    print(f"  continuity gap {c0:.3e}, derivative gap {c1:.3e} (tolerance 1e-12)")
    print(f"  residual ratio h->h/2: {ratio:.3f} (expect ~4 for second-order decay)")
    gaps_ok = c0 <= 1e-12 and c1 <= 1e-12
    ratio_ok = 3.5 <= ratio <= 4.5
    rng = np.random.default_rng(2024)
    signs_ok = True
    for _ in range(25):
        g1, g2 = rng.uniform(1.0, 12.0, 2)
        pa = rng.uniform(0.5, 4.0)
        pb = pa + rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 2.0)
        if pb <= 0.05:
            continue
        half = rng.uniform(1.5, 3.0)
        r0 = rng.uniform(0.15, half - 0.15)
        v = oracle.interface_velocity(
            oracle.SpheroidParams(g1=g1, g2=g2, p1=pa, p2=pb, half_length=half, radius=r0)
        )
        if np.sign(v) != np.sign(pa - pb):
            signs_ok = False
    print(f"  interface sign law on random draws: {'ok' if signs_ok else 'VIOLATED'}")
    ok = ok and gaps_ok and ratio_ok and signs_ok
    print("check: " + ("all good" if ok else "FAILED"))
    return 0 if ok else 1


if __name__ == "__main__":
    main()
