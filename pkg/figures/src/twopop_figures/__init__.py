"""Static figure renderer for twopop CSV outputs.

Reads the documented plain-text formats (snapshot tables, sweep reports) and
emits multi-panel raster images; contains no solver logic and never imports
the simulator.
"""

from .render import render, render_sweep
from .spec import FigureSpec, parse_spec

__version__ = "0.1.0"

__all__ = ["FigureSpec", "parse_spec", "render", "render_sweep"]
