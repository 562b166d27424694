"""Roughness and kurtosis, the two quantities the window search trades off.

All moments use the population convention (divide by N, no bias correction),
so kurtosis of a normal sample converges to 3 and of a Laplace sample to 6.
"""
from __future__ import annotations

import numpy as np

from .series import Series


def first_differences(values) -> np.ndarray:
    """Consecutive deltas x[i+1] - x[i]; needs at least two points."""
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise ValueError("need at least 2 points to difference")
    return np.diff(x)


def population_std(values) -> float:
    """Standard deviation with the divide-by-N convention."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty input")
    dev = x - x.mean()
    return float(np.sqrt(np.mean(dev * dev)))


def roughness(values) -> float:
    """Population std of the first differences.

    Zero exactly when the points lie on one straight line, and it grows with
    the magnitude of point-to-point wiggle, which is what makes it a usable
    smoothness objective.
    """
    return population_std(first_differences(values))


def kurtosis(values) -> float:
    """Fourth standardized moment m4 / m2^2 (population moments).

    Raises ValueError for constant input, where the ratio is undefined.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise ValueError("need at least 2 points for kurtosis")
    dev = x - x.mean()
    sq = dev * dev
    m2 = float(np.mean(sq))
    if m2 == 0.0:
        raise ValueError("kurtosis undefined for constant series")
    m4 = float(np.mean(sq * sq))
    return m4 / (m2 * m2)


def zscore(series: Series) -> Series:
    """Center at zero mean and rescale to unit population std."""
    x = series.values
    sigma = population_std(x)
    if sigma == 0.0:
        raise ValueError("z-score undefined for constant series")
    return Series(series.timestamps, (x - x.mean()) / sigma)
