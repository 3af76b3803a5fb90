"""Sweeps, lineshape analysis, figure scenarios and file output."""
from .lineshape import (
    Lineshape,
    LineshapeReport,
    classify_lineshape,
    classify_series,
    count_transparency_windows,
)
from .sweep import Axis, Dataset, Quantity, SweepSpec, run_sweep

__all__ = [
    "Axis",
    "Dataset",
    "Lineshape",
    "LineshapeReport",
    "Quantity",
    "SweepSpec",
    "classify_lineshape",
    "classify_series",
    "count_transparency_windows",
    "run_sweep",
]
