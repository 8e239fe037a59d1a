from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from extremogram.errors import InvalidParameter, LagTooLarge


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Ordered, finite, real observations of dimension ``dim``.

    ``values`` is stored as a read-only ``(n, d)`` float array. One-dimensional
    input is promoted to a single column.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise InvalidParameter("series values must be 1-d or 2-d")
        if arr.shape[0] < 1:
            raise InvalidParameter("series must contain at least one observation")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameter("series contains NaN or infinite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.n

    @property
    def scalar(self) -> np.ndarray:
        """The observations as a 1-d array; only valid when ``dim == 1``."""
        if self.dim != 1:
            raise InvalidParameter(f"series has dimension {self.dim}, not 1")
        return self.values[:, 0]

    def norms(self) -> np.ndarray:
        if self.dim == 1:
            return np.abs(self.values[:, 0])
        return np.linalg.norm(self.values, axis=1)

    def reversed(self) -> TimeSeries:
        return TimeSeries(self.values[::-1])

    def scaled(self, c: float) -> TimeSeries:
        return TimeSeries(self.values * c)


def as_series(data) -> TimeSeries:
    if isinstance(data, TimeSeries):
        return data
    return TimeSeries(np.asarray(data, dtype=float))


def lagged_embed(series, h: int) -> TimeSeries:
    """
    Stack ``h + 1`` consecutive observations.

    Row ``t`` of the result is ``(X_t, X_{t+1}, ..., X_{t+h})`` so the output
    has length ``n - h`` and dimension ``d * (h + 1)``.
    """
    series = as_series(series)
    h = int(h)
    if h < 0 or h >= series.n:
        raise LagTooLarge(f"lag {h} is outside 0 <= h < n = {series.n}")
    n = series.n
    blocks = [series.values[j : n - h + j] for j in range(h + 1)]
    return TimeSeries(np.hstack(blocks))
