"""Autocorrelation profile and peak detection for periodicity hints.

The estimator keeps a fixed lag-0 denominator:

    corr[t] = sum_{i<N-t} (x[i] - mean)(x[i+t] - mean) / sum_i (x[i] - mean)^2

computed in O(N log N) by zero-padding the centered series to the next power
of two at or above 2N and reading the cyclic self-correlation off an FFT.
The test-suite checks this route against a direct O(N^2) sum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MIN_PEAK_LAG = 2
DEFAULT_PEAK_THRESHOLD = 0.2


@dataclass(frozen=True)
class AcfProfile:
    """Correlations indexed by lag, the detected peak lags, and the top peak value."""

    correlations: np.ndarray
    peaks: tuple[int, ...]
    max_acf: float


def autocorrelation(values, max_lag: int) -> np.ndarray:
    """Correlations for lags 0..max_lag; corr[0] is exactly 1."""
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    if n < 4:
        raise ValueError("need at least 4 points for autocorrelation")
    if not 1 <= max_lag < n:
        raise ValueError(f"max_lag must be in [1, {n - 1}], got {max_lag}")
    centered = x - x.mean()
    if not np.any(centered):
        raise ValueError("autocorrelation undefined for constant series")
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    power = spectrum.real**2 + spectrum.imag**2
    raw = np.fft.irfft(power, size)[: max_lag + 1]
    return raw / raw[0]


def find_peaks(
    correlations,
    min_lag: int = DEFAULT_MIN_PEAK_LAG,
    threshold: float = DEFAULT_PEAK_THRESHOLD,
) -> AcfProfile:
    """Strict local maxima above threshold at lags >= min_lag.

    A run of equal values flanked by lower neighbours counts once, at its
    leftmost lag. max_acf is 0 when nothing qualifies, which downstream code
    treats as "no periodicity evidence".
    """
    c = np.asarray(correlations, dtype=np.float64)
    peaks: list[int] = []
    last = c.size - 1
    i = 1
    while i < last:
        if c[i] > c[i - 1]:
            j = i
            while j < last and c[j + 1] == c[i]:
                j += 1
            if j < last and c[j + 1] < c[i]:
                if i >= min_lag and c[i] > threshold:
                    peaks.append(i)
            i = j + 1
        else:
            i += 1
    max_acf = max((float(c[p]) for p in peaks), default=0.0)
    return AcfProfile(correlations=c, peaks=tuple(peaks), max_acf=max_acf)
