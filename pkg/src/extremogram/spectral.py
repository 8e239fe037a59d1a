"""
Spectral analysis of exceedance indicators.

For a region ``C`` and indicators ``I_t = I{X_t / a_m in C}`` with sample
hit rate ``p0``, the extremal autocovariances are

    gamma_hat(h)   = (m/n) sum_{t <= n-h} (I_t - p0)(I_{t+h} - p0)
    gamma_tilde(h) = (m/n) sum_{t <= n-h} I_t I_{t+h}

The lag-window estimator of the spectral density is the cosine series
``gamma_hat(0) + 2 sum_{h=1}^{r} cos(lambda h) g(h)`` where ``g`` is
``gamma_hat`` (``centering="centered"``, the default) or ``gamma_tilde``
(``centering="mixed"``). The mixed form carries a deterministic bias of
about ``2 m p0^2 sum_h cos(lambda h)``, which is not flat in ``lambda``
unless ``r`` is small relative to ``m``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from extremogram.core.series import as_series
from extremogram.core.threshold import Threshold
from extremogram.errors import InvalidParameter, LagTooLarge, TruncationTooLarge, TuningWarning
from extremogram.estimators.measures import exceedance_indicator

CENTERINGS = ("centered", "mixed")


@dataclass(frozen=True, eq=False)
class ExtremalAcov:
    gamma_hat: np.ndarray
    gamma_tilde: np.ndarray
    p0_hat: float


@dataclass(frozen=True, eq=False)
class SpectralEstimate:
    frequencies: np.ndarray
    values: np.ndarray
    truncation: int
    centering: str = "centered"

    def to_dict(self) -> dict:
        return {"lambda": [float(v) for v in self.frequencies],
                "f_hat": [float(v) for v in self.values],
                "truncation": int(self.truncation),
                "centering": self.centering}

    def to_csv(self) -> str:
        lines = ["lambda,f_hat"]
        lines += [f"{lam!r},{f!r}" for lam, f in zip(self.frequencies.tolist(),
                                                     self.values.tolist())]
        return "\n".join(lines) + "\n"


def fourier_frequencies(n: int, max_points: int | None = 512) -> np.ndarray:
    """``2 pi k / n`` strictly inside ``(0, pi)``, evenly thinned to ``max_points``."""
    k = np.arange(1, (n - 1) // 2 + 1)
    if max_points is not None and k.size > max_points:
        pick = np.unique(np.linspace(0, k.size - 1, max_points).round().astype(int))
        k = k[pick]
    return 2.0 * np.pi * k / n


def _check_frequencies(frequencies) -> np.ndarray:
    lam = np.atleast_1d(np.asarray(frequencies, dtype=float))
    if np.any(lam <= 0) or np.any(lam >= np.pi):
        raise InvalidParameter("frequencies must lie strictly inside (0, pi)")
    return lam


def acov_from_indicators(ind, m: float, max_lag: int) -> ExtremalAcov:
    ind = np.asarray(ind, dtype=float)
    n = ind.size
    if max_lag < 0 or max_lag >= n:
        raise LagTooLarge(f"max lag {max_lag} must satisfy 0 <= h < n = {n}")
    p0 = ind.sum() / n
    centered = ind - p0
    gamma_hat = np.empty(max_lag + 1)
    gamma_tilde = np.empty(max_lag + 1)
    for h in range(max_lag + 1):
        gamma_hat[h] = centered[: n - h] @ centered[h:]
        gamma_tilde[h] = ind[: n - h] @ ind[h:]
    scale = m / n
    return ExtremalAcov(gamma_hat=scale * gamma_hat, gamma_tilde=scale * gamma_tilde,
                        p0_hat=float(p0))


def extremal_acov(series, C, threshold: Threshold, max_lag: int,
                  allow_unbounded: bool = False) -> ExtremalAcov:
    """Centred and uncentred extremal autocovariances for lags ``0..max_lag``."""
    series = as_series(series)
    ind = exceedance_indicator(series, C, threshold, allow_unbounded)
    return acov_from_indicators(ind, threshold.m, max_lag)


def periodogram_from_indicators(ind, m: float, frequencies, centered: bool = True) -> np.ndarray:
    """
    ``(m/n) |sum_t J_t exp(i t lambda)|^2`` with ``J_t = I_t - p0`` (or ``I_t``).

    The sum over hits is evaluated directly; the constant ``p0`` term uses
    the closed-form geometric sum over ``t = 1..n``.
    """
    ind = np.asarray(ind, dtype=float)
    n = ind.size
    lam = _check_frequencies(frequencies)
    t = np.flatnonzero(ind) + 1.0
    out = np.empty(lam.size)
    step = max(1, 4_000_000 // max(1, t.size))
    p0 = ind.sum() / n
    for s in range(0, lam.size, step):
        lc = lam[s : s + step]
        total = np.exp(1j * np.outer(t, lc)).sum(axis=0)
        if centered:
            # sum_{t=1}^n e^{it lam} = e^{i lam (n+1)/2} sin(n lam / 2) / sin(lam / 2)
            geo = np.exp(0.5j * (n + 1) * lc) * np.sin(0.5 * n * lc) / np.sin(0.5 * lc)
            total = total - p0 * geo
        out[s : s + step] = np.abs(total) ** 2
    return m / n * out


def periodogram(series, C, threshold: Threshold, frequencies=None, centered: bool = True,
                allow_unbounded: bool = False) -> np.ndarray:
    """Periodogram of the exceedance indicators of ``C`` at ``frequencies``."""
    series = as_series(series)
    ind = exceedance_indicator(series, C, threshold, allow_unbounded)
    if frequencies is None:
        frequencies = fourier_frequencies(series.n)
    return periodogram_from_indicators(ind, threshold.m, frequencies, centered)


def lag_window_from_acov(acov: ExtremalAcov, r: int, frequencies,
                         centering: str = "centered") -> np.ndarray:
    if centering not in CENTERINGS:
        raise InvalidParameter(f"centering must be one of {CENTERINGS}")
    lam = np.atleast_1d(np.asarray(frequencies, dtype=float))
    g = acov.gamma_hat if centering == "centered" else acov.gamma_tilde
    h = np.arange(1, r + 1)
    return acov.gamma_hat[0] + 2.0 * np.cos(np.outer(lam, h)) @ g[1 : r + 1]


def lag_window(series, C, threshold: Threshold, r: int, frequencies=None,
               centering: str = "centered", allow_unbounded: bool = False) -> SpectralEstimate:
    """
    Truncated (rectangular) lag-window estimate of the extremal spectral density.

    Warns when ``m r^2 > n``, where mean-square consistency is not assured,
    and when some estimates are negative (reported as they are).
    """
    series = as_series(series)
    r = int(r)
    if r < 0 or r >= series.n:
        raise TruncationTooLarge(f"truncation {r} must satisfy 0 <= r < n = {series.n}")
    if threshold.m * r * r > series.n:
        warnings.warn(f"m r^2 = {threshold.m * r * r:.0f} exceeds n = {series.n}",
                      TuningWarning, stacklevel=2)
    if frequencies is None:
        frequencies = fourier_frequencies(series.n)
    lam = _check_frequencies(frequencies)
    acov = extremal_acov(series, C, threshold, r, allow_unbounded)
    values = lag_window_from_acov(acov, r, lam, centering)
    if np.any(values < 0):
        warnings.warn("lag-window estimate is negative at some frequencies",
                      RuntimeWarning, stacklevel=2)
    return SpectralEstimate(frequencies=lam, values=values, truncation=r, centering=centering)


def spectral_density(tau, frequencies) -> np.ndarray:
    """``tau[0] + 2 sum_{h>=1} cos(lambda h) tau[h]`` for a finite extremogram ``tau``."""
    tau = np.asarray(tau, dtype=float)
    lam = np.atleast_1d(np.asarray(frequencies, dtype=float))
    h = np.arange(1, tau.size)
    return tau[0] + 2.0 * np.cos(np.outer(lam, h)) @ tau[1:]
