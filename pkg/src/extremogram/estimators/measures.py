from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from extremogram.core.regions import RegionSpec, as_region
from extremogram.core.series import as_series
from extremogram.core.threshold import Threshold
from extremogram.errors import NotBoundedAwayFromZero, ZeroDenominator


@dataclass(frozen=True)
class ExceedanceEstimate:
    """``value = (m / n) * count``: the empirical measure of a scaled region."""

    value: float
    count: int
    m: float
    n: int


def require_bounded(region: RegionSpec, allow_unbounded: bool = False):
    if allow_unbounded or region.is_bounded_away_from_zero():
        return
    raise NotBoundedAwayFromZero(
        f"region {region.to_text()!r} is not provably bounded away from zero; "
        "pass allow_unbounded=True to override"
    )


def exceedance_indicator(series, region, threshold: Threshold,
                         allow_unbounded: bool = False) -> np.ndarray:
    """Boolean array ``I{X_t / a_m in region}``."""
    series = as_series(series)
    region = as_region(region)
    require_bounded(region, allow_unbounded)
    return region.contains(threshold.scale(series.values))


def exceedance_measure(series, region, threshold: Threshold,
                       allow_unbounded: bool = False) -> ExceedanceEstimate:
    series = as_series(series)
    ind = exceedance_indicator(series, region, threshold, allow_unbounded)
    count = int(ind.sum())
    return ExceedanceEstimate(value=threshold.m / series.n * count, count=count,
                              m=threshold.m, n=series.n)


def ratio_estimator(series, C, D, threshold: Threshold,
                    allow_unbounded: bool = False) -> float:
    """
    Ratio of empirical measures ``P_m(D) / P_m(C)``.

    Raises
    ------
    ZeroDenominator
        If no observation falls in ``C``.
    """
    pc = exceedance_measure(series, C, threshold, allow_unbounded)
    if pc.count == 0:
        raise ZeroDenominator("no observation falls in the denominator region")
    pd_ = exceedance_measure(series, D, threshold, allow_unbounded)
    return pd_.count / pc.count


def lagged_counts(ind_a: np.ndarray, ind_b: np.ndarray, max_lag: int) -> np.ndarray:
    """
    Joint hit counts ``#{t < n - h : A at t, B at t + h}`` for ``h = 0..max_lag``.

    Works from the positions of ``A`` hits, which are sparse at extreme
    thresholds.
    """
    n = ind_a.shape[0]
    idx = np.flatnonzero(ind_a)
    lags = np.arange(max_lag + 1)
    out = np.zeros(max_lag + 1, dtype=np.int64)
    # chunk the (hits x lags) gather to bound memory
    step = max(1, 2_000_000 // (max_lag + 1))
    for start in range(0, idx.size, step):
        j = idx[start : start + step, None] + lags[None, :]
        valid = j < n
        hits = ind_b[np.where(valid, j, 0)] & valid
        out += hits.sum(axis=0)
    return out
