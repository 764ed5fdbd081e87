"""CSV-to-image rendering for the qubit/bus/qubit CZ simulator outputs."""

from .landscape import render_landscape
from .levels import plateau_gap_mhz, render_levels
from .overlaps import render_overlaps

__version__ = "0.1.0"

__all__ = ["render_landscape", "render_levels", "render_overlaps", "plateau_gap_mhz", "__version__"]
