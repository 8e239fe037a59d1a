from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from extremogram.core.series import as_series
from extremogram.errors import DegenerateSeriesWarning, InvalidParameter


@dataclass(frozen=True)
class Threshold:
    """
    Exceedance level ``a_m`` with its quantile level and scaling ``m = 1/(1-q)``.
    """

    quantile_level: float
    a_m: float
    m: float

    def scale(self, values: np.ndarray) -> np.ndarray:
        """Return ``values / a_m``; a zero threshold maps nonzero values to +-inf."""
        if self.a_m > 0:
            return values / self.a_m
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(values == 0, 0.0, np.sign(values) * np.inf)
        return out


def order_statistic_index(q: float, n: int) -> int:
    """1-based index ``ceil(q n)`` of the type-1 empirical quantile."""
    # guard against q*n landing a hair above an integer through rounding
    k = math.ceil(q * n - 1e-9 * max(1.0, q * n))
    return min(max(k, 1), n)


def empirical_quantile(values, q: float) -> float:
    """Type-1 empirical quantile: the ``ceil(q n)``-th order statistic."""
    v = np.asarray(values, dtype=float).ravel()
    k = order_statistic_index(q, v.size)
    return float(np.partition(v, k - 1)[k - 1])


def select_threshold(series, q: float) -> Threshold:
    """
    Threshold at the empirical ``q``-quantile of the Euclidean norms.

    Emits :class:`DegenerateSeriesWarning` when all norms coincide.
    """
    series = as_series(series)
    if not 0.0 < q < 1.0:
        raise InvalidParameter(f"quantile level must lie in (0, 1), got {q}")
    if series.n < 2:
        raise InvalidParameter("threshold selection needs at least two observations")
    norms = series.norms()
    a_m = empirical_quantile(norms, q)
    if np.all(norms == norms[0]):
        warnings.warn(
            "all norms are equal; no observation can exceed the threshold",
            DegenerateSeriesWarning,
            stacklevel=2,
        )
    return Threshold(quantile_level=float(q), a_m=a_m, m=1.0 / (1.0 - q))
