"""Composite Simpson quadrature on uniformly sampled data."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray


def simpson_weights(n_points: int, h: float) -> NDArray[np.float64]:
    """Weight vector w such that sum(w * f) approximates the integral of f.

    Composite Simpson rule for an odd number of samples.  For an even
    number the last interval is closed with a trapezoid so the function
    stays usable on any uniform grid.
    """
    if n_points < 3:
        raise ValueError("need at least 3 samples for Simpson quadrature")
    if h <= 0.0:
        raise ValueError("sample spacing must be positive")
    n_simpson = n_points if n_points % 2 == 1 else n_points - 1
    w = np.ones(n_points, dtype=np.float64)
    w[1:n_simpson - 1:2] = 4.0
    w[2:n_simpson - 1:2] = 2.0
    w[n_simpson - 1] = 1.0
    w *= h / 3.0
    if n_simpson != n_points:
        # trapezoid closure on the final interval
        w[-2] += h / 2.0
        w[-1] = h / 2.0
    return w


def simpson(values: NDArray[np.float64], h: float) -> float:
    """Integrate uniformly sampled values with the composite Simpson rule."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("expected a 1-D sample array")
    return float(np.dot(simpson_weights(values.size, h), values))
