from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sp_fft

from extremogram.core.config import EstimatorConfig
from extremogram.core.series import as_series
from extremogram.core.threshold import Threshold, select_threshold
from extremogram.errors import InvalidParameter, TooFewBlocks
from extremogram.estimators.measures import exceedance_indicator


@dataclass(frozen=True)
class VarianceEstimate:
    sigma2: float
    k: int
    block_length: int


def block_variance_from_indicators(indicators, block_length: int) -> VarianceEstimate:
    """
    Mean squared deviation of per-block hit counts from their average.

    The series is cut into ``k = n // block_length`` consecutive blocks and
    any trailing remainder is dropped.
    """
    ind = np.asarray(indicators, dtype=float).ravel()
    b = int(block_length)
    if b < 1:
        raise InvalidParameter("block length must be at least 1")
    k = ind.size // b
    if k < 2:
        raise TooFewBlocks(f"need at least two blocks of length {b}, have {k}")
    sums = ind[: k * b].reshape(k, b).sum(axis=1)
    dev = sums - sums.sum() / k
    return VarianceEstimate(sigma2=float(dev @ dev / k), k=k, block_length=b)


def block_variance(series, C, config: EstimatorConfig | None = None,
                   threshold: Threshold | None = None,
                   block_length: int | None = None) -> VarianceEstimate:
    """
    Block estimate of the asymptotic variance of the exceedance measure of ``C``.

    Its target is ``mu(C) + 2 * sum_h tau_h(C)`` when the block length is
    of the order of ``m``.
    """
    series = as_series(series)
    config = config or EstimatorConfig()
    if threshold is None:
        threshold = select_threshold(series, config.quantile_level)
    ind = exceedance_indicator(series, C, threshold, config.allow_unbounded)
    b = block_length if block_length is not None else config.resolved_block_length(series.n)
    return block_variance_from_indicators(ind, b)


def autocovariances(w, max_lag: int, center: bool = True) -> np.ndarray:
    """``gamma(k) = (1/N) sum_t w_t w_{t+k}`` for ``k = 0..max_lag`` via FFT."""
    w = np.asarray(w, dtype=float)
    if center:
        w = w - w.mean()
    n = w.size
    nfft = sp_fft.next_fast_len(n + max_lag + 1)
    f = sp_fft.rfft(w, nfft)
    ac = sp_fft.irfft(f * np.conj(f), nfft)[: max_lag + 1]
    return ac / n


def long_run_variance(w, truncation: int) -> float:
    """Rectangular-window long-run variance, clipped at zero."""
    r = min(int(truncation), np.asarray(w).size - 1)
    ac = autocovariances(w, r)
    return max(0.0, float(ac[0] + 2.0 * ac[1:].sum()))
