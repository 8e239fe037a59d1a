"""Path simulation for the model families in ``ModelSpec``."""
from __future__ import annotations

import math

import numpy as np
from scipy import signal

from extremogram.core.series import TimeSeries
from extremogram.errors import InvalidParameter, NonStationary
from extremogram.models.arma import causal_psi, check_causal, ou_psi
from extremogram.models.noise import draw_noise, unit_variance
from extremogram.models.spec import Family, ModelSpec
from extremogram.models.tail_index import garch_log_moment

STATIONARITY_DRAWS = 200_000


def _rng(seed) -> np.random.Generator:
    if seed is None:
        raise InvalidParameter("simulation needs an explicit seed")
    return np.random.default_rng(seed)


def filter_psi(psi, noise: np.ndarray) -> np.ndarray:
    """``X_t = sum_{j=0}^{J} psi_j Z_{t-j}`` for the last ``len(noise) - J`` time points."""
    psi = np.asarray(psi, dtype=float)
    full = signal.lfilter(psi, [1.0], noise)
    return full[psi.size - 1 :]


def linear_psi(spec: ModelSpec) -> np.ndarray:
    if spec.family is Family.ARMA:
        return causal_psi(spec.phi, spec.theta)
    if spec.family is Family.SAS_LINEAR:
        if spec.psi is not None:
            psi = np.asarray(spec.psi, dtype=float)
            if psi.size == 0 or not np.all(np.isfinite(psi)):
                raise InvalidParameter("psi must be a non-empty finite sequence")
            return psi
        return ou_psi(spec.lambda_ou)
    raise InvalidParameter(f"{spec.family.value} is not a linear model")


def _simulate_linear(spec: ModelSpec, n: int, rng) -> np.ndarray:
    psi = linear_psi(spec)
    z = draw_noise(spec.driving_noise(), n + spec.burn_in + psi.size - 1, rng)
    return filter_psi(psi, z)[spec.burn_in :]


def _simulate_sv(spec: ModelSpec, n: int, rng) -> np.ndarray:
    total = n + spec.burn_in
    phi = spec.sv_phi
    z = draw_noise(spec.driving_noise(), total, rng)
    eps = rng.standard_normal(total)
    start = rng.standard_normal()
    # stationary start: log sigma_{-1} ~ N(0, 1), then unit-variance AR(1)
    log_sigma = signal.lfilter([np.sqrt(1.0 - phi * phi)], [1.0, -phi], eps,
                               zi=[phi * start])[0]
    return (np.exp(log_sigma) * z)[spec.burn_in :]


def check_garch_stationary(spec: ModelSpec) -> None:
    lyap = garch_log_moment(spec.alpha1, spec.beta1, spec.driving_noise(),
                            draws=STATIONARITY_DRAWS, seed=0)
    if not lyap < 0:
        raise NonStationary(
            f"E log(alpha1 Z^2 + beta1) = {lyap:.4g} >= 0; no stationary solution"
        )


def garch_recursion(alpha0: float, alpha1: float, beta1: float, z: np.ndarray) -> np.ndarray:
    """``X_t = sigma_t Z_t`` with ``sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + beta1 sigma_{t-1}^2``."""
    persistence = alpha1 + beta1
    s2 = alpha0 / (1.0 - persistence) if persistence < 1 else alpha0
    out = []
    append = out.append
    for zt in z.tolist():
        xt = math.sqrt(s2) * zt
        append(xt)
        s2 = alpha0 + alpha1 * xt * xt + beta1 * s2
    return np.asarray(out, dtype=float)


def _simulate_garch(spec: ModelSpec, n: int, rng) -> np.ndarray:
    check_garch_stationary(spec)
    z = draw_noise(unit_variance(spec.driving_noise()), n + spec.burn_in, rng)
    return garch_recursion(spec.alpha0, spec.alpha1, spec.beta1, z)[spec.burn_in :]


_SIMULATORS = {
    Family.SV: _simulate_sv,
    Family.GARCH11: _simulate_garch,
    Family.ARMA: _simulate_linear,
    Family.SAS_LINEAR: _simulate_linear,
}


def simulate_values(spec: ModelSpec, n: int, seed) -> np.ndarray:
    n = int(n)
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    return _SIMULATORS[spec.family](spec, n, _rng(seed))


def simulate(spec: ModelSpec, n: int, seed) -> TimeSeries:
    """
    Simulate ``n`` observations of ``spec``.

    The output is bit-identical for identical ``(spec, n, seed)``. Linear
    models use the causal moving average truncated at ``J`` terms, so each
    output value is an exact finite filter of the drawn noise.

    Raises
    ------
    NonCausal
        ARMA with an autoregressive root on or inside the unit circle.
    NonStationary
        GARCH(1,1) with ``E log(alpha1 Z^2 + beta1) >= 0``.
    """
    return TimeSeries(simulate_values(spec, n, seed))


def ar_filter(values, phi, burn_in: int = 0) -> np.ndarray:
    """Recursive AR filter ``Y_t = sum_i phi_i Y_{t-i} + e_t`` started at zero."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    check_causal(phi)
    y = signal.lfilter([1.0], np.r_[1.0, -phi], np.asarray(values, dtype=float))
    return y[burn_in:]


def simulate_filtered(spec: ModelSpec, ar, n: int, seed, warmup: int | None = None) -> TimeSeries:
    """
    Pass a simulated path of ``spec`` through the AR filter ``ar``.

    This gives AR-GARCH style composites. ``warmup`` extra leading values
    (default: the causal truncation length of the filter) absorb the zero
    start of the recursion and are discarded.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    ar = np.atleast_1d(np.asarray(ar, dtype=float))
    if warmup is None:
        warmup = causal_psi(ar, ()).size - 1
    base = simulate_values(spec, n + warmup, seed)
    return TimeSeries(ar_filter(base, ar, burn_in=warmup))
