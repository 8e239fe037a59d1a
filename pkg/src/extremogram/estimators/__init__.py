"""Exceedance measures, the empirical extremogram, variances and bands."""
from extremogram.estimators.bands import (
    clt_bands,
    clt_variances,
    permutation_bands,
    ratio_variance,
)
from extremogram.estimators.extremogram import (
    cross_extremogram_matrix,
    empirical_extremogram,
    tail_dependence,
)
from extremogram.estimators.measures import (
    ExceedanceEstimate,
    exceedance_indicator,
    exceedance_measure,
    lagged_counts,
    ratio_estimator,
)
from extremogram.estimators.result import ExtremogramResult
from extremogram.estimators.variance import (
    VarianceEstimate,
    autocovariances,
    block_variance,
    block_variance_from_indicators,
    long_run_variance,
)

__all__ = [
    "ExceedanceEstimate",
    "ExtremogramResult",
    "VarianceEstimate",
    "autocovariances",
    "block_variance",
    "block_variance_from_indicators",
    "clt_bands",
    "clt_variances",
    "cross_extremogram_matrix",
    "empirical_extremogram",
    "exceedance_indicator",
    "exceedance_measure",
    "lagged_counts",
    "long_run_variance",
    "permutation_bands",
    "ratio_estimator",
    "ratio_variance",
    "tail_dependence",
]
