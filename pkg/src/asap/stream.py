"""Streaming ingestion over fixed-size panes with periodic window refresh.

Arriving points accumulate into panes of pane_span points (the point-to-pixel
ratio, one pane per output pixel). Sealed panes live in a ring buffer of
`capacity` panes, so memory stays O(capacity) no matter how long the stream
runs. Every refresh_interval sealed panes the pane means are searched again;
the previous window seeds that search when it is still feasible, which lets
the estimate-based pruning engage immediately.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .acf import DEFAULT_MIN_PEAK_LAG, AcfProfile, autocorrelation, find_peaks
from .metrics import kurtosis, roughness
from .search import SearchConfig, SearchState, SmoothResult, find_window, update_lower_bound
from .series import Series
from .smoothing import sma

MIN_PANES_FOR_SEARCH = 4


@dataclass
class Pane:
    """Running sum over one pane; mean is materialized only at refresh time."""

    sum: float = 0.0
    count: int = 0
    start_ts: int = 0

    @property
    def mean(self) -> float:
        return self.sum / self.count


class StreamState:
    """Single-writer stream: ingest points, refresh the window on demand."""

    def __init__(
        self,
        pane_span: int,
        capacity: int,
        refresh_interval: int,
        config: SearchConfig | None = None,
    ):
        if pane_span < 1:
            raise ValueError("pane_span must be >= 1")
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if refresh_interval < 1:
            raise ValueError("refresh_interval must be >= 1")
        self.pane_span = pane_span
        self.capacity = capacity
        self.refresh_interval = refresh_interval
        self.config = config  # None means size max_window from the data at each refresh
        self.panes: deque[Pane] = deque(maxlen=capacity)
        self.panes_since_refresh = 0
        self.last_result: SmoothResult | None = None
        self._open = Pane()
        self._last_ts: int | None = None

    def ingest(self, t: int, v: float) -> None:
        """Add one point; seals the open pane when it reaches pane_span points.

        Raises ValueError on out-of-order timestamps (equal timestamps pass).
        """
        if self._last_ts is not None and t < self._last_ts:
            raise ValueError(f"out-of-order point: {t} after {self._last_ts}")
        self._last_ts = t
        pane = self._open
        if pane.count == 0:
            pane.start_ts = t
        pane.sum += v
        pane.count += 1
        if pane.count >= self.pane_span:
            self.panes.append(pane)
            self._open = Pane()
            self.panes_since_refresh += 1

    def aggregated(self) -> Series:
        """Pane means as a Series (sealed panes only)."""
        ts = np.fromiter((p.start_ts for p in self.panes), dtype=np.int64, count=len(self.panes))
        sums = np.fromiter((p.sum for p in self.panes), dtype=np.float64, count=len(self.panes))
        return Series(ts, sums / self.pane_span)

    def check_last_window(self, aggregated: Series, profile: AcfProfile | None = None) -> SearchState:
        """Seed state for the next search: the previous window with its true
        roughness when it still fits and still satisfies the kurtosis
        constraint, otherwise a fresh state."""
        fresh = SearchState()
        last = self.last_result
        if last is None or last.window <= 1:
            return fresh
        x = aggregated.values
        w = last.window
        if w >= x.size:
            return fresh
        y = sma(x, w)
        try:
            if kurtosis(y) < kurtosis(x):
                return fresh
        except ValueError:
            return fresh
        seeded = SearchState(window=w, roughness=roughness(y))
        if profile is not None and w < profile.correlations.size:
            seeded.lower_bound = update_lower_bound(
                1.0, w, float(profile.correlations[w]), profile.max_acf
            )
        return seeded

    def maybe_refresh(self) -> SmoothResult | None:
        """Re-run the window search when enough new panes have been sealed.

        Returns None while warming up (< 4 panes), between refreshes, or when
        the pane means are constant and there is nothing to search yet.
        """
        if self.panes_since_refresh < self.refresh_interval:
            return None
        if len(self.panes) < MIN_PANES_FOR_SEARCH:
            return None
        aggregated = self.aggregated()
        x = aggregated.values
        if np.all(x == x[0]):
            return None
        self.panes_since_refresh = 0
        config = self.config or SearchConfig.for_length(x.size)
        max_window = max(1, min(config.max_window, x.size - 1))
        max_lag = min(x.size - 1, max_window + 1)  # mirrors find_window's horizon
        profile = find_peaks(
            autocorrelation(x, max_lag),
            min_lag=DEFAULT_MIN_PEAK_LAG,
            threshold=config.acf_threshold,
        )
        seed = self.check_last_window(aggregated, profile=profile)
        result = find_window(aggregated, config, state=seed, profile=profile)
        self.last_result = result
        return result
