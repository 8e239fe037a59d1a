"""
Confidence bands for the empirical extremogram.

CLT bands use the delta-method variance of the ratio of exceedance
measures. For lag ``i`` with ``C = A at time 0`` and ``D_i = A at 0, B at i``,

    var_i = (mu(C)^2 s(D_i, D_i) - 2 mu(C) mu(D_i) s(D_i, C)
             + mu(D_i)^2 s(C, C)) / mu(C)^4

where ``s`` are long-run (co)variances of the indicator processes scaled by
``m``. The three ``s`` terms are estimated jointly as the long-run variance
of ``W_t = mu(C) I_{D_i}(t) - mu(D_i) I_C(t)`` using a rectangular window
truncated at the configured block length.

Permutation bands shuffle time (jointly for the ``A`` and ``B`` indicators)
to obtain a null distribution with no serial dependence.
"""
from __future__ import annotations

import dataclasses
import warnings

import numpy as np
from scipy import stats

from extremogram.core.config import EstimatorConfig
from extremogram.core.series import as_series
from extremogram.core.threshold import Threshold, select_threshold
from extremogram.errors import InvalidParameter, LagTooLarge, NoExceedances, ZeroDenominator
from extremogram.estimators.measures import exceedance_indicator, lagged_counts
from extremogram.estimators.result import ExtremogramResult
from extremogram.estimators.variance import long_run_variance


def ratio_variance(mu_c: float, mu_d: float, s_dd: float, s_cc: float, s_dc: float) -> float:
    """Delta-method variance of ``P(D)/P(C)`` from the joint covariance entries."""
    if mu_c == 0:
        raise ZeroDenominator("mu(C) is zero")
    return (mu_c ** 2 * s_dd - 2.0 * mu_c * mu_d * s_dc + mu_d ** 2 * s_cc) / mu_c ** 4


def clt_variances(ind_a: np.ndarray, ind_b: np.ndarray, m: float, max_lag: int,
                  truncation: int) -> np.ndarray:
    """Plug-in asymptotic variances of ``sqrt(n/m) * rho_hat(h)``, ``h = 0..max_lag``."""
    n = ind_a.shape[0]
    count_a = int(ind_a.sum())
    if count_a == 0:
        raise ZeroDenominator("no exceedances of A; mu(A) estimate is zero")
    mu_c = m / n * count_a
    num = lagged_counts(ind_a, ind_b, max_lag)
    out = np.empty(max_lag + 1)
    a = ind_a.astype(float)
    b = ind_b.astype(float)
    for h in range(max_lag + 1):
        i_c = a[: n - h]
        i_d = i_c * b[h:]
        mu_d = m / n * num[h]
        w = mu_c * i_d - mu_d * i_c
        out[h] = m * long_run_variance(w, truncation) / mu_c ** 4
    return out


def clt_bands(result: ExtremogramResult, series, A, B, config: EstimatorConfig,
              threshold: Threshold | None = None) -> ExtremogramResult:
    """Attach symmetric plug-in CLT bands ``rho_hat +- z * sqrt(m/n * var)``."""
    series = as_series(series)
    if threshold is None:
        threshold = select_threshold(series, config.quantile_level)
    ind_a = exceedance_indicator(series, A, threshold, config.allow_unbounded)
    ind_b = exceedance_indicator(series, B, threshold, config.allow_unbounded)
    H = result.max_lag
    r = config.resolved_block_length(series.n)
    var = clt_variances(ind_a, ind_b, threshold.m, H, r)
    degenerate = np.flatnonzero(var == 0.0)
    # lag 0 with rho = 1 (A inside B) has a genuinely degenerate ratio
    degenerate = [h for h in degenerate if not (h == 0 and result.rho[0] == 1.0)]
    if degenerate:
        warnings.warn(f"zero plug-in variance at lags {degenerate}; bands have zero width",
                      RuntimeWarning, stacklevel=2)
    z = stats.norm.ppf(0.5 + config.confidence_level / 2.0)
    half = z * np.sqrt(threshold.m / series.n * var)
    return dataclasses.replace(result, variance=var, band_lo=result.rho - half,
                               band_hi=result.rho + half)


def permutation_bands(series, A, B, config: EstimatorConfig,
                      threshold: Threshold | None = None):
    """
    Envelope of the extremogram over randomly permuted copies of the series.

    Each replicate draws from its own stream spawned from ``config.seed``,
    so results are deterministic given the seed. Returns ``(lo, hi)`` arrays
    for lags ``0..H`` holding the ``(1 - level)/2`` and ``(1 + level)/2``
    quantiles per lag; at lag 0 both equal the observed value, which
    permutation cannot change.
    """
    series = as_series(series)
    P = int(config.num_permutations)
    if P < 20:
        raise InvalidParameter(f"need at least 20 permutations, got {P}")
    if config.seed is None:
        raise InvalidParameter("permutation bands need an explicit seed")
    H = config.max_lag
    if H >= series.n:
        raise LagTooLarge(f"max lag {H} must be below n = {series.n}")
    if threshold is None:
        threshold = select_threshold(series, config.quantile_level)
    ind_a = exceedance_indicator(series, A, threshold, config.allow_unbounded)
    ind_b = exceedance_indicator(series, B, threshold, config.allow_unbounded)
    den = int(ind_a.sum())
    if den == 0:
        raise NoExceedances("no observation falls in A; lower the quantile level")
    reps = np.empty((P, H + 1))
    for i, child in enumerate(np.random.SeedSequence(config.seed).spawn(P)):
        perm = np.random.default_rng(child).permutation(series.n)
        reps[i] = lagged_counts(ind_a[perm], ind_b[perm], H) / den
    tail = (1.0 - config.confidence_level) / 2.0
    lo = np.quantile(reps, tail, axis=0)
    hi = np.quantile(reps, 1.0 - tail, axis=0)
    return lo, hi
