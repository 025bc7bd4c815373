"""Standalone plotting for nvodmr CSV outputs (no simulation code imported)."""

from .csvkit import SchemaError, read_numeric_csv, read_spectrum_dir
from .render import PlotSpec, extrema_main, map_main, render, spectrum_main

__all__ = ["PlotSpec", "SchemaError", "read_numeric_csv", "read_spectrum_dir",
           "render", "spectrum_main", "map_main", "extrema_main"]
