"""Series, regions, thresholds and estimator configuration."""
from extremogram.core.config import BandMethod, Centering, EstimatorConfig, default_block_length
from extremogram.core.regions import (
    CoordInterval,
    LinearBand,
    RegionSpec,
    as_region,
    membership,
    parse_region,
)
from extremogram.core.series import TimeSeries, as_series, lagged_embed
from extremogram.core.threshold import Threshold, empirical_quantile, select_threshold

__all__ = [
    "BandMethod",
    "Centering",
    "CoordInterval",
    "EstimatorConfig",
    "LinearBand",
    "RegionSpec",
    "Threshold",
    "TimeSeries",
    "as_region",
    "as_series",
    "default_block_length",
    "empirical_quantile",
    "lagged_embed",
    "membership",
    "parse_region",
    "select_threshold",
]
