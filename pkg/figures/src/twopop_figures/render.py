"""Multi-panel rendering of snapshot and sweep outputs."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .spec import FigureSpec
from .tables import SnapshotTable, read_snapshot_table, read_sweep_report

SERIES_STYLE = {
    "n1": dict(color="tab:red", label="species 1"),
    "n2": dict(color="tab:blue", label="species 2"),
    "p": dict(color="black", label="pressure"),
}


def _fmt_float(value: float) -> str:
    # shortest round-trip form, matching the simulator's file naming
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def _draw_panel(ax, snap: SnapshotTable, series, title: str) -> None:
    for name in series:
        ax.plot(snap.x, getattr(snap, name), linewidth=1.2, **SERIES_STYLE[name])
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)


def _save(fig, out_path) -> None:
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def render(spec: FigureSpec, out_path) -> str:
    """One panel per snapshot file, arranged in the spec's layout."""
    snaps = [read_snapshot_table(p) for p in spec.panels]
    rows, cols = spec.layout
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.4 * rows), squeeze=False)
    flat = [ax for row in axes for ax in row]
    for ax in flat[len(snaps):]:
        ax.set_axis_off()
    for ax, snap in zip(flat, snaps):
        _draw_panel(ax, snap, spec.series, f"t = {snap.time:g}")
    for ax in axes[-1]:
        ax.set_xlabel("x", fontsize=8)
    handles, labels = flat[0].get_legend_handles_labels()
    fig.legend(handles, labels, loc="lower center", ncol=len(labels), fontsize=8,
               frameon=False)
    fig.tight_layout(rect=(0, 0.05, 1, 1))
    _save(fig, out_path)
    return str(out_path)


def render_sweep(spec: FigureSpec, out_path) -> str:
    """Probe-time panels for every stiffness rung plus the reference row.

    Expects the directory layout written by the sweep command: report.csv
    alongside eps_<value>/snap_t<time>.csv and reference_t<time>.csv.
    """
    report = read_sweep_report(spec.report)
    base = os.path.dirname(spec.report)
    rows = len(report.epsilons) + 1
    cols = len(report.probe_times)
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 2.2 * rows), squeeze=False)
    for i, eps in enumerate(report.epsilons):
        for j, t in enumerate(report.probe_times):
            path = os.path.join(base, f"eps_{_fmt_float(eps)}", f"snap_t{_fmt_float(t)}.csv")
            snap = read_snapshot_table(path)
            _draw_panel(axes[i][j], snap, spec.series,
                        f"stiffness {eps:g}, t = {t:g}")
    for j, t in enumerate(report.probe_times):
        path = os.path.join(base, f"reference_t{_fmt_float(t)}.csv")
        snap = read_snapshot_table(path)
        _draw_panel(axes[-1][j], snap, spec.series, f"stiff limit, t = {t:g}")
        axes[-1][j].set_xlabel("x", fontsize=8)
    handles, labels = axes[0][0].get_legend_handles_labels()
    fig.legend(handles, labels, loc="lower center", ncol=len(labels), fontsize=8,
               frameon=False)
    fig.tight_layout(rect=(0, 0.03, 1, 1))
    _save(fig, out_path)
    return str(out_path)
