"""Figure spec files: small declarative descriptions of what to render.

Panel figures (one snapshot per panel):

    layout = 2x3
    series = n1, n2, p
    panel = out/fig1/snap_000.csv
    panel = out/fig1/snap_001.csv

Sweep figures (one row per stiffness rung plus the reference row):

    mode = sweep
    report = out/fig2e/report.csv
    series = n1, n2

Paths are resolved relative to the current working directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field

VALID_SERIES = ("n1", "n2", "p")


@dataclass
class FigureSpec:
    mode: str  # "panels" | "sweep"
    series: tuple[str, ...]
    layout: tuple[int, int] | None = None
    panels: tuple[str, ...] = ()
    report: str | None = None


def parse_spec(text: str) -> FigureSpec:
    mode = "panels"
    series: tuple[str, ...] = ("n1", "n2", "p")
    layout = None
    panels: list[str] = []
    report = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"spec line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "mode":
            if value not in ("panels", "sweep"):
                raise ValueError(f"spec line {lineno}: mode must be panels or sweep")
            mode = value
        elif key == "series":
            chosen = tuple(s.strip() for s in value.split(",") if s.strip())
            bad = [s for s in chosen if s not in VALID_SERIES]
            if bad or not chosen:
                raise ValueError(f"spec line {lineno}: series must be among {VALID_SERIES}")
            series = chosen
        elif key == "layout":
            try:
                rows, cols = value.lower().split("x")
                layout = (int(rows), int(cols))
            except ValueError:
                raise ValueError(f"spec line {lineno}: layout must look like 2x3") from None
            if layout[0] < 1 or layout[1] < 1:
                raise ValueError(f"spec line {lineno}: layout must be positive")
        elif key == "panel":
            panels.append(value)
        elif key == "report":
            report = value
        else:
            raise ValueError(f"spec line {lineno}: unknown key {key!r}")

    if mode == "panels":
        if not panels:
            raise ValueError("spec has no panel entries")
        if layout is None:
            layout = (1, len(panels))
        if layout[0] * layout[1] < len(panels):
            raise ValueError(
                f"layout {layout[0]}x{layout[1]} too small for {len(panels)} panels"
            )
    else:
        if report is None:
            raise ValueError("sweep spec needs a report entry")
        if panels:
            raise ValueError("sweep spec cannot list panels")
    return FigureSpec(mode=mode, series=series, layout=layout, panels=tuple(panels), report=report)
