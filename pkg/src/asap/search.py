"""Moving-average window selection.

The goal: the window w that minimizes roughness of the smoothed series
subject to kurtosis(smoothed) >= kurtosis(input), so outliers and regime
shifts survive smoothing. find_window gets there cheaply by evaluating
autocorrelation peak lags from largest to smallest with two pruning rules,
then binary-searching the remaining gap; exhaustive_search is the slow
reference that scans every window and is used as the oracle in tests.

Pruning rules, both derived from the closed-form roughness estimate for a
window w over an N-point series with std sigma:

    est(w) = sqrt(2) * sigma / w * sqrt(1 - N / (N - w) * acf[w])

* a candidate is skipped when its estimate exceeds the estimate at the
  current best window (engaged only once some feasible window is known), and
* after accepting a window, no window below
  w * sqrt((1 - max_acf) / (1 - acf[w])) can beat the best achievable
  estimate, so the walk down the candidate list stops there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .acf import DEFAULT_MIN_PEAK_LAG, DEFAULT_PEAK_THRESHOLD, AcfProfile, autocorrelation, find_peaks
from .metrics import kurtosis, roughness
from .series import Series
from .smoothing import SmoothParams, _prefix_sums, _sma_from_prefix, smooth_series

STRATEGIES = ("asap", "exhaustive", "grid2", "grid10", "binary")


@dataclass
class SearchConfig:
    """Knobs for find_window.

    max_window caps the candidate range (in points of the series being
    searched, i.e. preaggregated points when preaggregation ran upstream).
    length_corrected_pruning switches the skip rule to the full estimate with
    the N/(N-w) factor instead of the plain sqrt(1-acf)/w proxy.
    """

    max_window: int
    acf_threshold: float = DEFAULT_PEAK_THRESHOLD
    resolution: int = 800
    length_corrected_pruning: bool = False

    def __post_init__(self):
        if self.max_window < 1:
            raise ValueError("max_window must be >= 1")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")

    @classmethod
    def for_length(cls, n: int, resolution: int = 800) -> "SearchConfig":
        return cls(max_window=max(1, n // 10), resolution=resolution)


@dataclass
class SearchState:
    """Mutable progress of one search: best window so far and pruning bounds."""

    window: int = 1
    roughness: float = math.inf
    lower_bound: float = 1.0
    largest_feasible_idx: int | None = None
    evaluations: int = 0


@dataclass(frozen=True)
class SmoothResult:
    window: int
    smoothed: Series
    roughness: float
    kurtosis: float
    candidates_evaluated: int
    strategy: str


def estimate_roughness(sigma: float, n: int, w: int, acf_w: float) -> float:
    """Closed-form roughness estimate for window w; clamped at 0 when the
    correlation term would push the radicand negative."""
    if not 1 <= w < n:
        raise ValueError("window must satisfy 1 <= w < n")
    radicand = 1.0 - (n / (n - w)) * acf_w
    if radicand <= 0.0:
        return 0.0
    return math.sqrt(2.0) * sigma / w * math.sqrt(radicand)


def update_lower_bound(lower_bound: float, w: int, acf_w: float, max_acf: float) -> float:
    """Tighten the smallest window still worth trying after accepting w.

    Degenerate correlations (>= 1) leave the bound unchanged.
    """
    if acf_w >= 1.0 or max_acf >= 1.0:
        return lower_bound
    return max(lower_bound, w * math.sqrt((1.0 - max_acf) / (1.0 - acf_w)))


def is_rougher_estimate(w: int, acf_w: float, best_w: int, acf_best: float) -> bool:
    """Compare roughness estimates at two windows, dropping the shared
    sqrt(2)*sigma factor and the near-1 length correction."""
    return math.sqrt(max(0.0, 1.0 - acf_w)) / w > math.sqrt(max(0.0, 1.0 - acf_best)) / best_w


def _evaluate(prefix: np.ndarray, w: int, state: SearchState):
    """True metrics for one candidate; None when the smoothed series degenerates."""
    y = _sma_from_prefix(prefix, w)
    state.evaluations += 1
    try:
        return roughness(y), kurtosis(y)
    except ValueError:
        return None


def _prunable(state: SearchState, w: int, corr: np.ndarray, n: int, length_corrected: bool) -> bool:
    if not math.isfinite(state.roughness):
        return False  # nothing feasible yet, so nothing to compare against
    best_w = state.window
    if best_w >= corr.size or w >= corr.size:
        return False
    if length_corrected:
        return estimate_roughness(1.0, n, w, float(corr[w])) > estimate_roughness(
            1.0, n, best_w, float(corr[best_w])
        )
    return is_rougher_estimate(w, float(corr[w]), best_w, float(corr[best_w]))


def search_periodic(
    values,
    profile: AcfProfile,
    state: SearchState,
    target_kurtosis: float | None = None,
    length_corrected: bool = False,
) -> SearchState:
    """Walk ACF peak lags from largest to smallest, pruning as we go.

    A candidate is accepted when its true roughness beats the best so far and
    its kurtosis does not drop below the input's.
    """
    x = np.asarray(values, dtype=np.float64)
    if target_kurtosis is None:
        target_kurtosis = kurtosis(x)
    prefix = _prefix_sums(x)
    corr = profile.correlations
    candidates = profile.peaks
    for idx in range(len(candidates) - 1, -1, -1):
        w = candidates[idx]
        if w < state.lower_bound:
            break  # candidates are ascending; everything left is smaller still
        if _prunable(state, w, corr, x.size, length_corrected):
            continue
        evaluated = _evaluate(prefix, w, state)
        if evaluated is None:
            continue
        r, k = evaluated
        if r < state.roughness and k >= target_kurtosis:
            state.window = w
            state.roughness = r
            state.lower_bound = update_lower_bound(
                state.lower_bound, w, float(corr[w]), profile.max_acf
            )
            if state.largest_feasible_idx is None or idx > state.largest_feasible_idx:
                state.largest_feasible_idx = idx
    return state


def binary_search(
    values,
    head: int,
    tail: int,
    state: SearchState,
    target_kurtosis: float | None = None,
) -> SearchState:
    """Probe [head, tail] assuming kurtosis falls and roughness shrinks as the
    window grows: a kurtosis violation discards the upper half, otherwise the
    candidate is recorded when it improves on the state and the lower half is
    discarded."""
    x = np.asarray(values, dtype=np.float64)
    if target_kurtosis is None:
        target_kurtosis = kurtosis(x)
    prefix = _prefix_sums(x)
    head = max(1, head)
    tail = min(tail, x.size - 1)
    while head <= tail:
        mid = (head + tail) // 2
        evaluated = _evaluate(prefix, mid, state)
        if evaluated is None:
            tail = mid - 1
            continue
        r, k = evaluated
        if k < target_kurtosis:
            tail = mid - 1
        else:
            if r < state.roughness:
                state.window = mid
                state.roughness = r
            head = mid + 1
    return state


def _result_from_state(series: Series, state: SearchState, strategy: str) -> SmoothResult:
    w = state.window
    smoothed = smooth_series(series, SmoothParams(window=w)) if w > 1 else series
    try:
        k = kurtosis(smoothed.values)
    except ValueError:
        k = math.nan
    r = roughness(smoothed.values)
    return SmoothResult(
        window=w,
        smoothed=smoothed,
        roughness=r,
        kurtosis=k,
        candidates_evaluated=max(1, state.evaluations),
        strategy=strategy,
    )


def find_window(
    series: Series,
    config: SearchConfig | None = None,
    state: SearchState | None = None,
    profile: AcfProfile | None = None,
) -> SmoothResult:
    """Pick the smoothing window with the pruned ACF-peak search plus a binary
    fallback over the uncovered gap.

    `state` lets a caller seed the search with a window already known to be
    feasible (the streaming path does this); `profile` lets a caller reuse an
    already computed autocorrelation profile.
    """
    x = series.values
    n = x.size
    if n < 4:
        raise ValueError("need at least 4 points")
    if config is None:
        config = SearchConfig.for_length(n)
    max_window = max(1, min(config.max_window, n - 1))
    if np.all(x == x[0]):
        return _result_from_state(series, SearchState(), "asap")
    if state is None:
        state = SearchState()
    target = kurtosis(x)
    if profile is None:
        # One lag past max_window so a peak sitting exactly on the cap still
        # has a right neighbour to compare against.
        max_lag = min(n - 1, max_window + 1)
        profile = find_peaks(
            autocorrelation(x, max_lag),
            min_lag=DEFAULT_MIN_PEAK_LAG,
            threshold=config.acf_threshold,
        )
    if profile.peaks:
        state = search_periodic(
            x,
            profile,
            state,
            target_kurtosis=target,
            length_corrected=config.length_corrected_pruning,
        )
        head = max(math.ceil(state.lower_bound), state.window + 1)
        above = next((p for p in profile.peaks if p > state.window), max_window)
        state = binary_search(x, head, min(max_window, above), state, target_kurtosis=target)
    else:
        state = binary_search(x, 1, max_window, state, target_kurtosis=target)
    return _result_from_state(series, state, "asap")


def _scan_windows(series: Series, windows, strategy: str) -> SmoothResult:
    x = series.values
    if x.size < 4:
        raise ValueError("need at least 4 points")
    state = SearchState()
    if np.all(x == x[0]):
        return _result_from_state(series, state, strategy)
    target = kurtosis(x)
    prefix = _prefix_sums(x)
    for w in windows:
        evaluated = _evaluate(prefix, w, state)
        if evaluated is None:
            continue
        r, k = evaluated
        if k >= target and r < state.roughness:
            state.window = w
            state.roughness = r
    return _result_from_state(series, state, strategy)


def _clamp_max_window(series: Series, max_window: int | None) -> int:
    n = len(series)
    if max_window is None:
        max_window = max(1, n // 10)
    return max(1, min(max_window, n - 1))


def exhaustive_search(series: Series, max_window: int | None = None) -> SmoothResult:
    """Evaluate every window in [1, max_window]; ties go to the smaller window.

    The reference answer the pruned search is judged against.
    """
    mw = _clamp_max_window(series, max_window)
    return _scan_windows(series, range(1, mw + 1), "exhaustive")


def grid_search(series: Series, step: int, max_window: int | None = None) -> SmoothResult:
    """Exhaustive scan restricted to windows 1, 1+step, 1+2*step, ..."""
    if step < 1:
        raise ValueError("step must be >= 1")
    mw = _clamp_max_window(series, max_window)
    return _scan_windows(series, range(1, mw + 1, step), f"grid{step}")


def binary_only_search(series: Series, max_window: int | None = None) -> SmoothResult:
    """Binary search over the whole window range, no ACF guidance."""
    x = series.values
    if x.size < 4:
        raise ValueError("need at least 4 points")
    state = SearchState()
    if np.all(x == x[0]):
        return _result_from_state(series, state, "binary")
    mw = _clamp_max_window(series, max_window)
    state = binary_search(x, 1, mw, state)
    result = _result_from_state(series, state, "binary")
    return result
