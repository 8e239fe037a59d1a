"""Causal moving-average representation of ARMA filters."""
from __future__ import annotations

import numpy as np
from scipy import signal

from extremogram.errors import InvalidParameter, NonCausal, NotConverged

ROOT_MARGIN = 1e-6
MIN_TERMS = 1000
REL_TOL = 1e-12


def _coef(values) -> np.ndarray:
    a = np.atleast_1d(np.asarray([] if values is None else values, dtype=float))
    if a.ndim != 1 or not np.all(np.isfinite(a)):
        raise InvalidParameter("coefficients must be a finite vector")
    return a


def check_causal(phi) -> None:
    """Raise ``NonCausal`` unless ``1 - phi_1 z - ... - phi_p z^p`` has all roots outside the unit circle."""
    phi = np.trim_zeros(_coef(phi), "b")
    if phi.size == 0:
        return
    # np.roots expects the highest power first
    poly = np.r_[-phi[::-1], 1.0]
    roots = np.roots(poly)
    if roots.size and np.min(np.abs(roots)) <= 1.0 + ROOT_MARGIN:
        raise NonCausal(
            f"autoregressive polynomial has a root of modulus {np.min(np.abs(roots)):.6g} "
            "on or inside the unit circle"
        )


def arma_psi_coefficients(phi, theta, J: int) -> np.ndarray:
    """
    Coefficients ``psi_0..psi_J`` of the causal expansion of an ARMA filter.

    Uses ``psi_j = theta_j + sum_{i=1}^{p} phi_i psi_{j-i}`` with
    ``theta_0 = 1`` and ``theta_j = 0`` for ``j > q``.

    Parameters
    ----------
    phi : array_like
        Autoregressive coefficients ``phi_1..phi_p``.
    theta : array_like
        Moving-average coefficients ``theta_1..theta_q``.
    J : int
        Last index returned.

    Returns
    -------
    ndarray of shape ``(J + 1,)``
    """
    phi = _coef(phi)
    theta = _coef(theta)
    J = int(J)
    if J < 0:
        raise InvalidParameter(f"J must be non-negative, got {J}")
    check_causal(phi)
    # impulse response of theta(z) / phi(z)
    impulse = np.zeros(J + 1)
    impulse[0] = 1.0
    psi = signal.lfilter(np.r_[1.0, theta], np.r_[1.0, -phi], impulse)
    return psi


def truncation_index(psi: np.ndarray, rel_tol: float = REL_TOL) -> int | None:
    """Smallest ``J`` after which every ``|psi_j|`` is below ``rel_tol * max|psi|``; None if not reached."""
    a = np.abs(psi)
    big = np.flatnonzero(a >= rel_tol * a.max())
    last = int(big[-1])
    return last + 1 if last + 1 < a.size else None


def causal_psi(phi, theta, min_terms: int = MIN_TERMS, max_terms: int = 2 ** 22) -> np.ndarray:
    """
    Truncated causal coefficients for simulation and oracles.

    Returns ``psi_0..psi_J`` with ``J = max(min_terms, J*)`` where ``J*`` is the
    first index after which the coefficients stay below ``1e-12 max|psi|``.
    """
    size = max(int(min_terms), 2 * (len(_coef(phi)) + len(_coef(theta))) + 2)
    while size <= max_terms:
        psi = arma_psi_coefficients(phi, theta, size)
        cut = truncation_index(psi)
        if cut is not None:
            return psi[: max(int(min_terms), cut) + 1]
        size *= 2
    raise NotConverged(f"causal coefficients did not decay within {max_terms} terms")


def ou_psi(lambda_ou: float, min_terms: int = MIN_TERMS) -> np.ndarray:
    """``psi_j = exp(-lambda j)`` truncated by the same rule as ``causal_psi``."""
    if not lambda_ou > 0:
        raise InvalidParameter(f"lambda_ou must be positive, got {lambda_ou}")
    cut = int(np.ceil(-np.log(REL_TOL) / lambda_ou))
    return np.exp(-lambda_ou * np.arange(max(int(min_terms), cut) + 1))
