"""Transparency-window counting and lineshape classification."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

DEFAULT_PROMINENCE = 0.05
ABSORPTION_MARGIN = 0.05
# Two dips whose floors stay above this fraction of the lower flanking
# peak are shallow notches on a central peak rather than true windows.
DEEP_WINDOW_RATIO = 0.25


class Lineshape(str, enum.Enum):
    LORENTZIAN = "Lorentzian"
    SINGLE_WINDOW = "SingleWindow"
    DOUBLE_WINDOW = "DoubleWindow"
    THREE_PEAK = "ThreePeak"
    ABSORPTION_ENHANCED = "AbsorptionEnhanced"


@dataclass(frozen=True)
class LineshapeReport:
    n_windows: int
    shape: Lineshape
    peak_value: float
    baseline_value: float


def find_windows(series, prominence: float = DEFAULT_PROMINENCE):
    """Indices and prominences of transparency dips.

    A dip is an interior local minimum whose prominence, the smaller of the
    rises to the highest points reached before the curve drops below the
    minimum on either side, is at least ``prominence * max(series)``.
    """
    y = np.asarray(series, dtype=float)
    if y.ndim != 1 or y.size < 5:
        raise ValueError("series must be 1-D with at least 5 points")
    if not np.all(np.isfinite(y)):
        raise ValueError("series must be finite")
    if not 0 < prominence < 1:
        raise ValueError("prominence must lie in (0, 1)")
    threshold = prominence * float(np.max(y))
    idx, props = find_peaks(-y, prominence=threshold)
    return idx, props["prominences"]


def count_transparency_windows(series, prominence: float = DEFAULT_PROMINENCE) -> int:
    return len(find_windows(series, prominence)[0])


def classify_series(series, baseline, prominence: float = DEFAULT_PROMINENCE) -> LineshapeReport:
    """Classify ``series`` against the uncoupled ``baseline`` on the same grid."""
    y = np.asarray(series, dtype=float)
    peak = float(np.max(y))
    base = float(np.max(baseline))
    idx, _ = find_windows(y, prominence)
    n = len(idx)
    if n == 0:
        shape = (Lineshape.ABSORPTION_ENHANCED if peak > base * (1 + ABSORPTION_MARGIN)
                 else Lineshape.LORENTZIAN)
    elif n == 1:
        shape = Lineshape.SINGLE_WINDOW
    else:
        shape = Lineshape.DOUBLE_WINDOW if _deep_dips(y, idx) else Lineshape.THREE_PEAK
    return LineshapeReport(n, shape, peak, base)


def _deep_dips(y: np.ndarray, idx) -> bool:
    ratios = []
    for i in idx:
        left = np.max(y[:i])
        right = np.max(y[i + 1:])
        ratios.append(y[i] / min(left, right))
    return max(ratios) <= DEEP_WINDOW_RATIO


def classify_lineshape(grid, series, params, quantity="ResponseA", baseline_params=None,
                       delta: float = 0.0, prominence: float = DEFAULT_PROMINENCE
                       ) -> LineshapeReport:
    """Classify a response or spectrum curve against its decoupled baseline.

    ``quantity`` names what ``series`` holds (see
    :class:`~ionvit.workbench.sweep.Quantity`); the baseline curve is the same
    quantity for ``baseline_params`` (default: ``params`` with g_a = g_b = 0)
    evaluated on ``grid``. For response quantities the grid is detuning; for
    spectra it is frequency at fixed ``delta``.
    """
    from .sweep import Quantity, evaluate_line

    quantity = Quantity.parse(quantity)
    baseline_params = params.decoupled() if baseline_params is None else baseline_params
    axis = "delta" if quantity.is_response else "omega"
    values, _ = evaluate_line(baseline_params, quantity, axis, np.asarray(grid, dtype=float),
                              fixed={"delta": delta, "omega": 0.0})
    return classify_series(series, values, prominence)
