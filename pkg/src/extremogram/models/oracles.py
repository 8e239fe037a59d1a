"""
Theoretical extremograms for the model families.

Closed forms cover stochastic volatility (limit measures on the axes),
linear processes with symmetric regularly varying noise, and the sas
Ornstein-Uhlenbeck filter. ARCH(1) and GARCH(1,1) are handled by Monte
Carlo on the squared process with sets ``A = (a, inf)`` and ``B = (b, inf)``:

    ARCH(1):     rho(h) = E min(1, C_0 ... C_{h-1} a / b)^(alpha/2)
    GARCH(1,1):  rho(h) = E min(Z_0^2 / a, C_0 ... C_{h-1} Z_h^2 / b)^(alpha/2)
                          / E (Z^2 / a)^(alpha/2)

with ``C_t = alpha1 Z_t^2 + beta1`` and ``alpha`` the tail index of ``X``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from extremogram.core.regions import as_region
from extremogram.errors import (
    DivergentCoefficients,
    InvalidParameter,
    RegionSemanticError,
    UnsupportedRegion,
    ZeroDenominator,
)
from extremogram.models.arma import causal_psi
from extremogram.models.noise import NoiseSpec, draw_noise, unit_variance
from extremogram.models.tail_index import solve_garch_tail_index

CLOSED_FORM = "closed_form"
MONTE_CARLO = "monte_carlo"
CHUNK = 50_000


@dataclass(frozen=True, eq=False)
class TheoreticalExtremogram:
    """
    Model extremogram for lags ``0..H``.

    ``se`` holds per-lag Monte Carlo standard errors (None for closed
    forms). ``gamma`` optionally holds the unnormalized joint measures.
    """

    lags: np.ndarray
    rho: np.ndarray
    method: str = CLOSED_FORM
    se: np.ndarray | None = None
    replicates: int | None = None
    gamma: np.ndarray | None = None
    tail_bound: float | None = None
    params: dict = field(default_factory=dict)

    @property
    def max_lag(self) -> int:
        return int(self.lags[-1])

    def to_dict(self) -> dict:
        """Serialization with the same layout as an empirical result."""
        lo = hi = None
        if self.se is not None:
            lo = [float(v) for v in np.clip(self.rho - 1.96 * self.se, 0, 1)]
            hi = [float(v) for v in np.clip(self.rho + 1.96 * self.se, 0, 1)]
        config = dict(self.params, method=self.method)
        if self.replicates is not None:
            config["replicates"] = int(self.replicates)
        if self.tail_bound is not None:
            config["tail_bound"] = float(self.tail_bound)
        return {
            "lags": [int(v) for v in self.lags],
            "rho": [float(v) for v in self.rho],
            "band_lo": lo,
            "band_hi": hi,
            "baseline": 0.0,
            "counts": None,
            "config": config,
            "variance": None,
            "reference": None,
            "se": None if self.se is None else [float(v) for v in self.se],
            "gamma": None if self.gamma is None else [float(v) for v in self.gamma],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        d = self.to_dict()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lag", "rho", "lo", "hi", "baseline"])
        for i, lag in enumerate(d["lags"]):
            lo = "" if d["band_lo"] is None else repr(d["band_lo"][i])
            hi = "" if d["band_hi"] is None else repr(d["band_hi"][i])
            writer.writerow([lag, repr(d["rho"][i]), lo, hi, repr(0.0)])
        return buf.getvalue()


def _lags(H: int) -> np.ndarray:
    H = int(H)
    if H < 0:
        raise InvalidParameter(f"H must be non-negative, got {H}")
    return np.arange(H + 1)


def _positive(**kw):
    for name, v in kw.items():
        if not (np.isfinite(v) and v > 0):
            raise InvalidParameter(f"{name} must be positive, got {v}")


# stochastic volatility ------------------------------------------------------

def _interval_measure(pieces, alpha: float, p: float) -> float:
    """``lambda_alpha`` of a union of intervals bounded away from zero."""
    q = 1.0 - p
    total = 0.0
    for lo, hi in pieces:
        if lo > 0:
            total += p * (lo ** -alpha - hi ** -alpha)
        elif hi < 0:
            total += q * ((-hi) ** -alpha - (-lo) ** -alpha)
        else:
            return np.inf
    return total


def _pieces(region):
    try:
        return [(lo, hi) for lo, hi, _, _ in region.intervals_1d()]
    except RegionSemanticError:
        raise UnsupportedRegion("the SV oracle handles unions of intervals on x1 only") from None


def _intersect(first, second):
    out = []
    for lo1, hi1 in first:
        for lo2, hi2 in second:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo < hi:
                out.append((lo, hi))
    return out


def _zero_interior(pieces) -> bool:
    return any(lo < 0 < hi for lo, hi in pieces)


def sv_extremogram(A, B, alpha: float, p: float, H: int) -> TheoreticalExtremogram:
    """
    Extremogram of a stochastic volatility model ``X_t = sigma_t Z_t``.

    The limit measures of lagged vectors live on the axes, so for ``h >= 1``
    ``rho(h) = 0`` when ``A`` and ``B`` are both bounded away from zero and
    ``rho(h) = 1`` when ``B`` contains a neighbourhood of zero. The lag-0
    value is ``lambda(A & B) / lambda(A)`` with ``lambda(x, inf) = p x^-alpha``
    and ``lambda(-inf, -x) = (1 - p) x^-alpha``.

    Raises
    ------
    UnsupportedRegion
        If ``A`` is not bounded away from zero, or ``B`` is neither bounded
        away from zero nor a neighbourhood of zero.
    """
    _positive(alpha=alpha)
    if not 0 <= p <= 1:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")
    lags = _lags(H)
    A = as_region(A)
    B = as_region(B)
    pa, pb = _pieces(A), _pieces(B)
    lam_a = _interval_measure(pa, alpha, p)
    if not np.isfinite(lam_a):
        raise UnsupportedRegion("A must be bounded away from zero")
    if lam_a == 0:
        raise ZeroDenominator("lambda(A) is zero; A carries no tail mass")
    if B.is_bounded_away_from_zero():
        later = 0.0
    elif _zero_interior(pb):
        later = 1.0
    else:
        raise UnsupportedRegion("B must be bounded away from zero or contain a neighbourhood of zero")
    rho = np.full(lags.size, later)
    rho[0] = _interval_measure(_intersect(pa, pb), alpha, p) / lam_a
    return TheoreticalExtremogram(lags=lags, rho=rho, gamma=rho * lam_a,
                                  params={"model": "sv", "alpha": alpha, "p": p,
                                          "a_set": A.to_text(), "b_set": B.to_text()})


def sv_tail_measure(A, alpha: float, p: float) -> float:
    """``lambda_alpha(A)`` for a one-dimensional region bounded away from zero."""
    value = _interval_measure(_pieces(as_region(A)), alpha, p)
    if not np.isfinite(value):
        raise UnsupportedRegion("region must be bounded away from zero")
    return value


# linear processes -------------------------------------------------------------

def linear_process_extremogram(psi, alpha: float, a: float, b: float, H: int) -> TheoreticalExtremogram:
    """
    Extremogram of ``X_t = sum_j psi_j Z_{t-j}`` with symmetric regularly varying noise.

    For ``A = (a, inf)`` and ``B = (b, inf)``

        rho(h) = sum_j [min(psi_j+, psi_{j+h}+ a/b)^alpha
                        + min(psi_j-, psi_{j+h}- a/b)^alpha] / sum_j |psi_j|^alpha

    The finite sequence is evaluated exactly. ``tail_bound`` reports the
    share of ``sum |psi_j|^alpha`` carried by the last coefficient, a
    diagnostic for truncated infinite filters.

    Raises
    ------
    DivergentCoefficients
        If ``sum |psi_j|^alpha`` is zero or not finite.
    """
    _positive(alpha=alpha, a=a, b=b)
    lags = _lags(H)
    psi = np.asarray(psi, dtype=float).ravel()
    peak = np.max(np.abs(psi)) if psi.size else 0.0
    if np.isfinite(peak) and peak > 0:
        # rho is invariant to rescaling psi; this keeps |psi_j|^alpha away from underflow
        psi = psi / peak
    with np.errstate(over="ignore", invalid="ignore"):
        powers = np.abs(psi) ** alpha
        total = powers.sum()
    if psi.size == 0 or not np.isfinite(total) or total == 0:
        raise DivergentCoefficients("sum of |psi_j|^alpha is zero or not finite")
    pos = np.maximum(psi, 0.0)
    neg = np.maximum(-psi, 0.0)
    ratio = a / b
    rho = np.empty(lags.size)
    for h in lags:
        shifted_pos = np.zeros_like(psi)
        shifted_neg = np.zeros_like(psi)
        if h < psi.size:
            shifted_pos[: psi.size - h] = pos[h:]
            shifted_neg[: psi.size - h] = neg[h:]
        num = (np.minimum(pos, shifted_pos * ratio) ** alpha
               + np.minimum(neg, shifted_neg * ratio) ** alpha).sum()
        rho[h] = num / total
    return TheoreticalExtremogram(lags=lags, rho=np.clip(rho, 0.0, 1.0),
                                  tail_bound=float(powers[-1] / total),
                                  params={"model": "linear", "alpha": alpha, "a": a, "b": b})


def ar1_extremogram(phi: float, alpha: float, H: int, a: float = 1.0, b: float = 1.0) -> TheoreticalExtremogram:
    """
    AR(1) closed form: ``min(1, phi^(alpha h) (a/b)^alpha)`` for ``phi >= 0``.

    For ``phi < 0`` odd lags vanish and even lags follow ``|phi|``.
    """
    _positive(alpha=alpha, a=a, b=b)
    if not -1 < phi < 1:
        raise InvalidParameter(f"phi must lie in (-1, 1), got {phi}")
    lags = _lags(H)
    rho = np.minimum(1.0, np.abs(phi) ** (alpha * lags) * (a / b) ** alpha)
    if phi < 0:
        rho[1::2] = 0.0
    return TheoreticalExtremogram(lags=lags, rho=rho,
                                  params={"model": "ar1", "phi": phi, "alpha": alpha, "a": a, "b": b})


def arma_extremogram(phi, theta, alpha: float, H: int, a: float = 1.0, b: float = 1.0) -> TheoreticalExtremogram:
    result = linear_process_extremogram(causal_psi(phi, theta), alpha, a, b, H)
    result.params.update(model="arma", phi=[float(v) for v in np.atleast_1d(phi)],
                         theta=[float(v) for v in np.atleast_1d(theta)])
    return result


def sas_ou_extremogram(lambda_ou: float, alpha: float, a: float, b: float, H: int) -> TheoreticalExtremogram:
    """Discrete sas Ornstein-Uhlenbeck: ``min(1, exp(-lambda alpha h) (a/b)^alpha)``."""
    _positive(lambda_ou=lambda_ou, a=a, b=b)
    if not 0 < alpha < 2:
        raise InvalidParameter(f"alpha must lie in (0, 2), got {alpha}")
    lags = _lags(H)
    rho = np.minimum(1.0, np.exp(-lambda_ou * alpha * lags) * (a / b) ** alpha)
    return TheoreticalExtremogram(lags=lags, rho=rho,
                                  params={"model": "sas_ou", "lambda_ou": lambda_ou,
                                          "alpha": alpha, "a": a, "b": b})


# ARCH / GARCH Monte Carlo ------------------------------------------------------

def _streams(seed, replicates: int):
    """Deterministic per-chunk generators spawned from ``seed``."""
    if seed is None:
        raise InvalidParameter("Monte Carlo oracles need an explicit seed")
    sizes = [CHUNK] * (replicates // CHUNK)
    if replicates % CHUNK:
        sizes.append(replicates % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(size, np.random.default_rng(child)) for size, child in zip(sizes, children)]


def _resolve_alpha(alpha, alpha1, beta1, noise, seed):
    if alpha is None:
        alpha = solve_garch_tail_index(alpha1, beta1, noise, seed=seed).alpha
    _positive(alpha=alpha)
    return float(alpha)


def arch1_extremogram(alpha1: float, noise: NoiseSpec | None, a: float, b: float, H: int,
                      mc_replicates: int = 200_000, seed=0, alpha: float | None = None) -> TheoreticalExtremogram:
    """
    Monte Carlo ARCH(1) extremogram on the squared process.

    Estimates ``E min(1, C_0 ... C_{h-1} a/b)^(alpha/2)`` per lag with
    standard errors; ``alpha`` defaults to the solved tail index.
    """
    _positive(alpha1=alpha1, a=a, b=b)
    lags = _lags(H)
    alpha = _resolve_alpha(alpha, alpha1, 0.0, noise, seed)
    R = int(mc_replicates)
    unit = unit_variance(noise or NoiseSpec())
    s1 = np.zeros(lags.size)
    s2 = np.zeros(lags.size)
    for size, rng in _streams(seed, R):
        if H > 0:
            z = draw_noise(unit, size * H, rng).reshape(size, H)
            prod = np.cumprod(alpha1 * z * z, axis=1)
            vals = np.minimum(1.0, prod * (a / b)) ** (alpha / 2)
        else:
            vals = np.empty((size, 0))
        v0 = np.full((size, 1), min(1.0, a / b) ** (alpha / 2))
        vals = np.hstack([v0, vals])
        s1 += vals.sum(axis=0)
        s2 += (vals * vals).sum(axis=0)
    mean = s1 / R
    var = np.maximum(s2 / R - mean ** 2, 0.0) * R / (R - 1)
    return TheoreticalExtremogram(lags=lags, rho=mean, method=MONTE_CARLO,
                                  se=np.sqrt(var / R), replicates=R,
                                  params={"model": "arch1", "alpha1": alpha1, "alpha": alpha,
                                          "a": a, "b": b})


def garch11_extremogram(alpha0: float, alpha1: float, beta1: float, noise: NoiseSpec | None,
                        a: float, b: float, H: int, mc_replicates: int = 200_000, seed=0,
                        alpha: float | None = None) -> TheoreticalExtremogram:
    """
    Monte Carlo GARCH(1,1) extremogram on the squared process.

    Numerator and denominator of the ratio use the same draws; the standard
    error applies the delta method to the ratio of means. ``alpha0`` does
    not enter the limit and is recorded only.
    """
    _positive(alpha0=alpha0, a=a, b=b)
    if alpha1 < 0 or beta1 < 0:
        raise InvalidParameter("alpha1 and beta1 must be non-negative")
    lags = _lags(H)
    alpha = _resolve_alpha(alpha, alpha1, beta1, noise, seed)
    k = alpha / 2
    R = int(mc_replicates)
    unit = unit_variance(noise or NoiseSpec())
    sn = np.zeros(lags.size)
    snn = np.zeros(lags.size)
    snd = np.zeros(lags.size)
    sd = sdd = 0.0
    for size, rng in _streams(seed, R):
        z2 = draw_noise(unit, size * (H + 1), rng).reshape(size, H + 1) ** 2
        first = z2[:, 0] / a
        den = first ** k
        num = np.empty((size, H + 1))
        num[:, 0] = np.minimum(first, z2[:, 0] / b) ** k
        if H > 0:
            prod = np.cumprod(alpha1 * z2[:, :H] + beta1, axis=1)
            num[:, 1:] = np.minimum(first[:, None], prod * z2[:, 1:] / b) ** k
        sn += num.sum(axis=0)
        snn += (num * num).sum(axis=0)
        snd += (num * den[:, None]).sum(axis=0)
        sd += den.sum()
        sdd += (den * den).sum()
    mn, md = sn / R, sd / R
    rho = mn / md
    var_n = snn / R - mn ** 2
    var_d = sdd / R - md ** 2
    cov = snd / R - mn * md
    var_ratio = np.maximum(var_n - 2 * rho * cov + rho ** 2 * var_d, 0.0) / md ** 2
    return TheoreticalExtremogram(lags=lags, rho=rho, method=MONTE_CARLO,
                                  se=np.sqrt(var_ratio / (R - 1)), replicates=R,
                                  params={"model": "garch11", "alpha0": alpha0, "alpha1": alpha1,
                                          "beta1": beta1, "alpha": alpha, "a": a, "b": b})


def decay_slope(result: TheoreticalExtremogram, lags) -> float:
    """Least-squares slope of ``log rho(h)`` over ``lags``."""
    lags = np.asarray(lags)
    y = np.log(result.rho[lags])
    return float(np.polyfit(lags, y, 1)[0])


def garch_decay_rate(alpha1: float, beta1: float, kappa: float, noise: NoiseSpec | None = None,
                     draws: int = 200_000, seed=0) -> float:
    """``log E C^kappa``; a geometric bound on the extremogram decay (negative for ``kappa`` below ``alpha/2``)."""
    rng = np.random.default_rng(seed)
    z = draw_noise(unit_variance(noise or NoiseSpec()), draws, rng)
    return float(np.log(np.mean((alpha1 * z * z + beta1) ** kappa)))


# sets for bivariate lags -------------------------------------------------------

class BandExample(NamedTuple):
    mu_a: float
    mu_b: float
    gamma_ab0: float
    gamma_bb0: float


def band_example_oracle(L: float, U: float, alpha: float) -> BandExample:
    """
    Measures of ``A = {x_1 > 1}`` and ``B = {x_1 - x_2 in (L, U), x_1, x_2 >= 0}``
    for a lagged pair of stochastic volatility observations with positive tails.

    ``mu(A) = 1``, ``mu(B) = L^-alpha - U^-alpha``, ``gamma_AB(0) = 1 - U^-alpha``
    and ``gamma_BB(0) = mu(B)``; all later lags vanish.
    """
    _positive(alpha=alpha, L=L, U=U)
    if not L < 1 < U:
        raise InvalidParameter(f"need 0 < L < 1 < U, got L={L}, U={U}")
    mu_b = L ** -alpha - U ** -alpha
    return BandExample(mu_a=1.0, mu_b=mu_b, gamma_ab0=1.0 - U ** -alpha, gamma_bb0=mu_b)


# pre-asymptotic values by simulation ------------------------------------------

def preasymptotic_tail_dependence(values, thresholds, lag: int) -> np.ndarray:
    """
    ``P(X_h > u | X_0 > u)`` estimated from one long path for each ``u``.

    Uses sorted marginals and sorted lagged minima, so many thresholds cost
    one sort each.
    """
    x = np.asarray(values, dtype=float).ravel()
    lag = int(lag)
    if not 0 <= lag < x.size:
        raise InvalidParameter(f"lag must satisfy 0 <= lag < {x.size}")
    u = np.atleast_1d(np.asarray(thresholds, dtype=float))
    marg = np.sort(x)
    joint = np.sort(np.minimum(x[: x.size - lag], x[lag:]))
    p_marg = (x.size - np.searchsorted(marg, u, side="right")) / x.size
    p_joint = (joint.size - np.searchsorted(joint, u, side="right")) / joint.size
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(p_marg > 0, p_joint / p_marg, np.nan)
