"""Scaling plots for edge-coloring bench CSVs.

Consumes the frozen bench schema (algo, n, m, delta, rep, seed, wall_ms,
colors_used, validated), takes the median wall time across reps per
(algo, m), and renders one log-log runtime-vs-m figure with a fitted
power-law exponent per algorithm series.
"""

from .core import SCHEMA, SchemaError, load_rows, median_series, fit_slope, plot_scaling

__all__ = ["SCHEMA", "SchemaError", "load_rows", "median_series",
           "fit_slope", "plot_scaling"]
