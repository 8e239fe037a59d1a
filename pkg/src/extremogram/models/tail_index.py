"""
Tail index of GARCH(1,1) via the moment equation ``E C^(alpha/2) = 1``.

Here ``C = alpha1 Z^2 + beta1`` for unit-variance noise ``Z``. The function
``h(alpha) = E C^(alpha/2)`` is convex with ``h(0) = 1``; when
``E log C < 0`` and ``P(C > 1) > 0`` it has exactly one positive root.
A single fixed sample of ``C`` is reused for every evaluation, so the
Monte Carlo ``h`` is a deterministic smooth function and plain bisection
applies.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from extremogram.errors import InvalidParameter, NoRoot, NotConverged
from extremogram.models.noise import NoiseSpec, draw_noise, unit_variance

ALPHA_LO = 0.01
ALPHA_HI = 20.0
TOL = 1e-4


@dataclass(frozen=True)
class TailIndexResult:
    """Root ``alpha`` and the Monte Carlo standard error of ``h(alpha)`` there."""

    alpha: float
    h_se: float
    replicates: int
    iterations: int

    def __float__(self) -> float:
        return self.alpha


def garch_c_draws(alpha1: float, beta1: float, noise: NoiseSpec | None, count: int,
                  rng: np.random.Generator) -> np.ndarray:
    if alpha1 < 0 or beta1 < 0:
        raise InvalidParameter("alpha1 and beta1 must be non-negative")
    z = draw_noise(unit_variance(noise or NoiseSpec()), count, rng)
    return alpha1 * z * z + beta1


def garch_log_moment(alpha1: float, beta1: float, noise: NoiseSpec | None = None,
                     draws: int = 200_000, seed=0) -> float:
    """Monte Carlo estimate of the top Lyapunov exponent ``E log(alpha1 Z^2 + beta1)``."""
    c = garch_c_draws(alpha1, beta1, noise, draws, np.random.default_rng(seed))
    with np.errstate(divide="ignore"):
        return float(np.mean(np.log(c)))


def solve_garch_tail_index(alpha1: float, beta1: float, noise: NoiseSpec | None = None,
                           mc_replicates: int = 1_000_000, seed=0, tol: float = TOL,
                           bracket=(ALPHA_LO, ALPHA_HI), max_iter: int = 200) -> TailIndexResult:
    """
    Solve ``E (alpha1 Z^2 + beta1)^(alpha/2) = 1`` for ``alpha > 0``.

    Parameters
    ----------
    alpha1, beta1 : float
    noise : NoiseSpec, optional
        Gaussian (default) or Student-t; rescaled to unit variance.
    mc_replicates : int
        Number of shared draws of ``C``.
    seed : int
    tol : float
        Bisection tolerance in ``alpha``.

    Returns
    -------
    TailIndexResult

    Raises
    ------
    NoRoot
        If ``E log C >= 0`` (``h`` never drops below one) or ``h`` stays below
        one on the whole bracket (for example ``C <= c < 1`` almost surely).
    """
    mc_replicates = int(mc_replicates)
    if mc_replicates < 2:
        raise InvalidParameter("need at least two Monte Carlo replicates")
    c = garch_c_draws(alpha1, beta1, noise, mc_replicates, np.random.default_rng(seed))
    with np.errstate(divide="ignore"):
        log_c = np.log(c)
    if np.mean(log_c) >= 0:
        raise NoRoot(f"E log C = {np.mean(log_c):.4g} >= 0; no positive root exists")

    def h(a):
        with np.errstate(over="ignore"):
            return float(np.mean(np.exp(0.5 * a * log_c)))

    lo, hi = map(float, bracket)
    if h(lo) >= 1.0:
        raise NoRoot(f"h({lo}) >= 1; the moment function does not drop below one")
    if h(hi) < 1.0:
        raise NoRoot(f"E C^(alpha/2) < 1 for all alpha up to {hi}")
    it = 0
    while hi - lo > tol:
        it += 1
        if it > max_iter:
            raise NotConverged(f"bisection did not reach tolerance {tol}")
        mid = 0.5 * (lo + hi)
        if h(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    se = float(np.std(np.exp(0.5 * root * log_c), ddof=1) / np.sqrt(mc_replicates))
    return TailIndexResult(alpha=root, h_se=se, replicates=mc_replicates, iterations=it)
