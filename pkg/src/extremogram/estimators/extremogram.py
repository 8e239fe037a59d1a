from __future__ import annotations

import dataclasses

import numpy as np

from extremogram.core.config import BandMethod, EstimatorConfig, default_block_length
from extremogram.core.regions import as_region, parse_region
from extremogram.core.series import as_series
from extremogram.core.threshold import Threshold, select_threshold
from extremogram.errors import InvalidParameter, LagTooLarge, NoExceedances
from extremogram.estimators.bands import clt_bands, permutation_bands
from extremogram.estimators.measures import exceedance_indicator, lagged_counts
from extremogram.estimators.result import ExtremogramResult


def empirical_extremogram(series, A, B, config: EstimatorConfig | None = None,
                          threshold: Threshold | None = None,
                          reference=None) -> ExtremogramResult:
    """
    Empirical extremogram of ``series`` for the sets ``A`` and ``B``.

    Parameters
    ----------
    series : TimeSeries or array_like
    A, B : RegionSpec or str
        Regions acting on ``X_t / a_m``; both must be bounded away from zero
        unless ``config.allow_unbounded`` is set.
    config : EstimatorConfig, optional
    threshold : Threshold, optional
        Defaults to the empirical ``config.quantile_level`` quantile of the norms.
    reference : array_like, optional
        Theoretical curve for lags ``0..H`` (its meaning is given by
        ``config.centering``); stored with the result, never used as centre.

    Returns
    -------
    ExtremogramResult
        ``rho[h] = #{t <= n-h: X_t in A, X_{t+h} in B} / #{t <= n: X_t in A}``.
        The denominator runs over the full sample for every lag.
    """
    series = as_series(series)
    config = config or EstimatorConfig()
    A = as_region(A)
    B = as_region(B)
    H = config.max_lag
    if H >= series.n:
        raise LagTooLarge(f"max lag {H} must be below n = {series.n}")
    if threshold is None:
        threshold = select_threshold(series, config.quantile_level)
    ind_a = exceedance_indicator(series, A, threshold, config.allow_unbounded)
    ind_b = exceedance_indicator(series, B, threshold, config.allow_unbounded)
    den = int(ind_a.sum())
    if den == 0:
        raise NoExceedances(
            f"no observation falls in A at the {threshold.quantile_level} quantile; "
            "lower the quantile level"
        )
    num = lagged_counts(ind_a, ind_b, H)
    if reference is not None:
        reference = np.asarray(reference, dtype=float)
        if reference.shape != (H + 1,):
            raise InvalidParameter(f"reference must have {H + 1} entries")
    meta = {
        "a_set": A.to_text(),
        "b_set": B.to_text(),
        "quantile_level": threshold.quantile_level,
        "a_m": threshold.a_m,
        "m": threshold.m,
        "max_lag": H,
        "band_method": config.band_method.value,
    }
    result = ExtremogramResult(
        lags=np.arange(H + 1),
        rho=num / den,
        numerator_counts=num,
        denominator_count=den,
        n=series.n,
        baseline=float(ind_b.sum()) / series.n,
        centering_used=config.centering,
        reference=reference,
        config=meta,
    )
    if config.band_method is BandMethod.CLT:
        result = clt_bands(result, series, A, B, config, threshold)
        extra = {"block_length": config.block_length or default_block_length(series.n),
                 "confidence_level": config.confidence_level}
    elif config.band_method is BandMethod.PERMUTATION:
        lo, hi = permutation_bands(series, A, B, config, threshold)
        result = dataclasses.replace(result, band_lo=lo, band_hi=hi)
        extra = {"num_permutations": config.num_permutations,
                 "confidence_level": config.confidence_level, "seed": config.seed}
    else:
        return result
    return dataclasses.replace(result, config=dict(meta, **extra))


def cross_extremogram_matrix(series, A, B, config: EstimatorConfig | None = None,
                             threshold: Threshold | None = None) -> dict:
    """
    The four extremograms ``AA``, ``AB``, ``BA`` and ``BB`` at a common threshold.

    ``AB`` and ``BA`` generally differ: the cross extremogram is not
    symmetric in its two sets.
    """
    series = as_series(series)
    config = config or EstimatorConfig()
    if threshold is None:
        threshold = select_threshold(series, config.quantile_level)
    pairs = {"AA": (A, A), "AB": (A, B), "BA": (B, A), "BB": (B, B)}
    return {key: empirical_extremogram(series, first, second, config, threshold)
            for key, (first, second) in pairs.items()}


def tail_dependence(series, config: EstimatorConfig | None = None,
                    threshold: Threshold | None = None) -> ExtremogramResult:
    """Upper tail dependence coefficients, ``A = B = (1, inf)``."""
    series = as_series(series)
    if series.dim != 1:
        raise InvalidParameter("tail dependence is defined for scalar series")
    upper = parse_region("(1,inf)")
    return empirical_extremogram(series, upper, upper, config, threshold)
