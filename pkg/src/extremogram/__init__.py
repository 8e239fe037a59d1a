"""
Extremogram estimation for heavy-tailed time series.

The extremogram ``rho_AB(h)`` measures how likely an extreme event ``B`` is
``h`` steps after an extreme event ``A``; it plays the role of the
autocorrelation function for the extremes of a regularly varying series.
"""
from extremogram.core import (
    BandMethod,
    Centering,
    EstimatorConfig,
    RegionSpec,
    Threshold,
    TimeSeries,
    lagged_embed,
    parse_region,
    select_threshold,
)
from extremogram.estimators import (
    ExtremogramResult,
    block_variance,
    cross_extremogram_matrix,
    empirical_extremogram,
    exceedance_measure,
    tail_dependence,
)
from extremogram.spectral import SpectralEstimate, extremal_acov, lag_window, periodogram

__version__ = "0.1.0"

__all__ = [
    "BandMethod",
    "Centering",
    "EstimatorConfig",
    "ExtremogramResult",
    "RegionSpec",
    "SpectralEstimate",
    "Threshold",
    "TimeSeries",
    "block_variance",
    "cross_extremogram_matrix",
    "empirical_extremogram",
    "exceedance_measure",
    "extremal_acov",
    "lag_window",
    "lagged_embed",
    "parse_region",
    "periodogram",
    "select_threshold",
    "tail_dependence",
]
