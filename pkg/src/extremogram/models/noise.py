"""
Regularly varying and light-tailed i.i.d. noise laws.

Symmetric alpha-stable variates use the Chambers-Mallows-Stuck transform

    X = sin(a V) / cos(V)^(1/a) * (cos((1 - a) V) / W)^((1 - a) / a)

with ``V ~ U(-pi/2, pi/2)`` and ``W ~ Exp(1)``; at ``a = 2`` this is a
Gaussian with variance ``2 scale^2``. Two-sided Pareto variates have
``P(|Z| > x) = (x / scale)^-alpha`` for ``x >= scale`` and a positive sign
with probability ``p``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from enum import Enum

import numpy as np

from extremogram.errors import InvalidParameter


class NoiseLaw(str, Enum):
    STABLE = "stable"
    PARETO = "pareto"
    STUDENT_T = "t"
    GAUSSIAN = "gaussian"


_ALIASES = {
    "sas": NoiseLaw.STABLE,
    "symmetric_stable": NoiseLaw.STABLE,
    "two_sided_pareto": NoiseLaw.PARETO,
    "student_t": NoiseLaw.STUDENT_T,
    "student": NoiseLaw.STUDENT_T,
    "normal": NoiseLaw.GAUSSIAN,
}


def _law(value) -> NoiseLaw:
    if isinstance(value, NoiseLaw):
        return value
    key = str(value).lower()
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return NoiseLaw(key)
    except ValueError:
        raise InvalidParameter(f"unknown noise law {value!r}") from None


@dataclass(frozen=True)
class NoiseSpec:
    """
    An i.i.d. noise law.

    Parameters
    ----------
    law : {"stable", "pareto", "t", "gaussian"}
    alpha : float, optional
        Stability index in ``(0, 2]`` or Pareto tail index ``> 0``.
    p : float
        Pareto tail balance ``lim P(Z > x) / P(|Z| > x)``.
    nu : float, optional
        Student-t degrees of freedom.
    scale : float
    """

    law: NoiseLaw = NoiseLaw.GAUSSIAN
    alpha: float | None = None
    p: float = 0.5
    nu: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "law", _law(self.law))
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise InvalidParameter(f"scale must be positive, got {self.scale}")
        if self.law is NoiseLaw.STABLE:
            if self.alpha is None or not 0 < self.alpha <= 2:
                raise InvalidParameter(f"stable index must lie in (0, 2], got {self.alpha}")
        elif self.law is NoiseLaw.PARETO:
            if self.alpha is None or not self.alpha > 0:
                raise InvalidParameter(f"Pareto tail index must be positive, got {self.alpha}")
            if not 0 <= self.p <= 1:
                raise InvalidParameter(f"tail balance p must lie in [0, 1], got {self.p}")
        elif self.law is NoiseLaw.STUDENT_T:
            if self.nu is None or not self.nu > 0:
                raise InvalidParameter(f"degrees of freedom must be positive, got {self.nu}")

    @property
    def tail_index(self) -> float:
        """Tail index of ``|Z|``; ``inf`` for the Gaussian law."""
        if self.law is NoiseLaw.GAUSSIAN or (self.law is NoiseLaw.STABLE and self.alpha == 2):
            return np.inf
        if self.law is NoiseLaw.STUDENT_T:
            return float(self.nu)
        return float(self.alpha)

    @property
    def is_symmetric(self) -> bool:
        return self.law is not NoiseLaw.PARETO or self.p == 0.5

    @property
    def std(self) -> float:
        """Standard deviation, for laws with a finite second moment."""
        if self.law is NoiseLaw.GAUSSIAN:
            return self.scale
        if self.law is NoiseLaw.STUDENT_T and self.nu > 2:
            return self.scale * np.sqrt(self.nu / (self.nu - 2.0))
        raise InvalidParameter(f"{self.law.value} noise has no finite variance here")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["law"] = self.law.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> NoiseSpec:
        known = {"law", "alpha", "p", "nu", "scale"}
        extra = set(d) - known
        if extra:
            raise InvalidParameter(f"unknown noise fields {sorted(extra)}")
        return cls(**d)


def _stable_cms(rng: np.random.Generator, alpha: float, count: int) -> np.ndarray:
    v = rng.uniform(-np.pi / 2, np.pi / 2, count)
    w = rng.standard_exponential(count)
    if alpha == 1.0:
        return np.tan(v)
    return (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))


def draw_noise(spec: NoiseSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` variates from ``spec`` using an existing generator."""
    count = int(count)
    if count < 1:
        raise InvalidParameter(f"count must be at least 1, got {count}")
    if spec.law is NoiseLaw.GAUSSIAN:
        z = rng.standard_normal(count)
    elif spec.law is NoiseLaw.STUDENT_T:
        z = rng.standard_t(spec.nu, count)
    elif spec.law is NoiseLaw.STABLE:
        z = _stable_cms(rng, spec.alpha, count)
    else:
        u = rng.random(count)
        # 1 - U lies in (0, 1], so the magnitude is finite
        magnitude = (1.0 - u) ** (-1.0 / spec.alpha)
        sign = np.where(rng.random(count) < spec.p, 1.0, -1.0)
        z = sign * magnitude
    return spec.scale * z


def sample_noise(spec: NoiseSpec, count: int, seed=None) -> np.ndarray:
    """
    i.i.d. draws from ``spec``, deterministic given ``seed``.

    Parameters
    ----------
    spec : NoiseSpec
    count : int
    seed : int, SeedSequence or Generator
    """
    return draw_noise(spec, count, np.random.default_rng(seed))


def unit_variance(spec: NoiseSpec) -> NoiseSpec:
    """The same law rescaled to unit variance (Gaussian or Student-t with ``nu > 2``)."""
    return replace(spec, scale=spec.scale / spec.std)
