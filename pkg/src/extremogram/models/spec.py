"""Serializable model descriptions for the simulators."""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from extremogram.errors import InvalidParameter
from extremogram.models.noise import NoiseLaw, NoiseSpec


class Family(str, Enum):
    SV = "sv"
    GARCH11 = "garch11"
    ARMA = "arma"
    SAS_LINEAR = "sas_linear"


_FAMILY_ALIASES = {"sv_lognormal": Family.SV, "garch": Family.GARCH11, "arch1": Family.GARCH11,
                   "linear": Family.SAS_LINEAR, "ou": Family.SAS_LINEAR}

DEFAULT_BURN_IN = 10_000
FIELDS = ("family", "alpha0", "alpha1", "beta1", "phi", "theta", "psi", "lambda_ou",
          "alpha", "noise", "burn_in")


def _floats(v):
    if v is None:
        return ()
    return tuple(float(x) for x in np.atleast_1d(np.asarray(v, dtype=float)))


@dataclass(frozen=True)
class ModelSpec:
    """
    A model family and its parameters.

    ``family`` selects which fields are read:

    * ``sv``: ``X_t = sigma_t Z_t`` with ``log sigma_t`` a zero-mean Gaussian
      AR(1) of unit variance and coefficient ``phi[0]``; ``Z`` from ``noise``.
    * ``garch11``: ``sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + beta1 sigma_{t-1}^2``
      with Gaussian or Student-t ``noise`` scaled to unit variance. The
      alias ``arch1`` forces ``beta1 = 0``.
    * ``arma``: ``phi`` and ``theta`` coefficients driven by ``noise``.
    * ``sas_linear``: ``X_t = sum_j psi_j Z_{t-j}`` with explicit ``psi`` or
      ``psi_j = exp(-lambda_ou j)``; ``noise`` defaults to symmetric
      ``alpha``-stable here and for ``sv`` and ``arma`` when ``alpha`` is set.

    ``burn_in`` leading values are simulated and discarded.
    """

    family: Family
    alpha0: float = 1.0
    alpha1: float = 0.0
    beta1: float = 0.0
    phi: tuple = ()
    theta: tuple = ()
    psi: tuple | None = None
    lambda_ou: float | None = None
    alpha: float | None = None
    noise: NoiseSpec | None = None
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        fam = self.family
        if not isinstance(fam, Family):
            key = str(fam).lower()
            if key == "arch1":
                object.__setattr__(self, "beta1", 0.0)
            fam = _FAMILY_ALIASES.get(key) or _family(key)
            object.__setattr__(self, "family", fam)
        object.__setattr__(self, "phi", _floats(self.phi))
        object.__setattr__(self, "theta", _floats(self.theta))
        if self.psi is not None:
            object.__setattr__(self, "psi", _floats(self.psi))
        if isinstance(self.noise, dict):
            object.__setattr__(self, "noise", NoiseSpec.from_dict(self.noise))
        if int(self.burn_in) != self.burn_in or self.burn_in < 0:
            raise InvalidParameter(f"burn_in must be a non-negative integer, got {self.burn_in}")
        object.__setattr__(self, "burn_in", int(self.burn_in))
        self._validate()

    def _validate(self):
        if self.family is Family.GARCH11:
            if not self.alpha0 > 0 or self.alpha1 < 0 or self.beta1 < 0:
                raise InvalidParameter("GARCH(1,1) needs alpha0 > 0 and alpha1, beta1 >= 0")
            noise = self.driving_noise()
            if noise.law not in (NoiseLaw.GAUSSIAN, NoiseLaw.STUDENT_T):
                raise InvalidParameter("GARCH(1,1) noise must be Gaussian or Student-t")
            if noise.law is NoiseLaw.STUDENT_T and not noise.nu > 2:
                raise InvalidParameter("Student-t GARCH noise needs nu > 2 for unit variance")
        elif self.family is Family.SV:
            if len(self.phi) != 1 or not -1 < self.phi[0] < 1:
                raise InvalidParameter("SV needs a single log-volatility coefficient phi in (-1, 1)")
        elif self.family is Family.SAS_LINEAR:
            if self.psi is None and self.lambda_ou is None:
                raise InvalidParameter("sas_linear needs psi or lambda_ou")
            if self.psi is not None and self.lambda_ou is not None:
                raise InvalidParameter("give either psi or lambda_ou, not both")

    @property
    def sv_phi(self) -> float:
        return self.phi[0]

    def driving_noise(self) -> NoiseSpec:
        """The noise law; without one, symmetric ``alpha``-stable if ``alpha`` is set, else Gaussian."""
        if self.noise is not None:
            return self.noise
        if self.alpha is not None and self.family is not Family.GARCH11:
            return NoiseSpec(law=NoiseLaw.STABLE, alpha=self.alpha)
        return NoiseSpec()

    def with_(self, **changes) -> ModelSpec:
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "beta1": self.beta1,
            "phi": list(self.phi),
            "theta": list(self.theta),
            "psi": None if self.psi is None else list(self.psi),
            "lambda_ou": self.lambda_ou,
            "alpha": self.alpha,
            "noise": None if self.noise is None else self.noise.to_dict(),
            "burn_in": self.burn_in,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> ModelSpec:
        extra = set(d) - set(FIELDS)
        if extra:
            raise InvalidParameter(f"unknown model fields {sorted(extra)}")
        if "family" not in d:
            raise InvalidParameter("model spec needs a family")
        kw = {k: v for k, v in d.items() if v is not None}
        if "noise" in kw:
            kw["noise"] = NoiseSpec.from_dict(kw["noise"])
        return cls(**kw)

    @classmethod
    def from_json(cls, text: str) -> ModelSpec:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParameter(f"model spec is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise InvalidParameter("model spec must be a JSON object")
        return cls.from_dict(d)


def _family(key: str) -> Family:
    try:
        return Family(key)
    except ValueError:
        raise InvalidParameter(f"unknown model family {key!r}") from None
