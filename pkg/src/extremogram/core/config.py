from __future__ import annotations

import enum
import math
import warnings
from dataclasses import asdict, dataclass

from extremogram.errors import InvalidParameter, TuningWarning


class Centering(str, enum.Enum):
    """Which theoretical curve a supplied model oracle is drawn against."""

    PRE_ASYMPTOTIC = "pre_asymptotic"
    TRUE_VALUE = "true_value"


class BandMethod(str, enum.Enum):
    CLT = "clt"
    PERMUTATION = "perm"
    NONE = "none"


def default_block_length(n: int) -> int:
    # n ** 0.4 for n = 10 ** 5 evaluates a hair above 100
    return max(1, math.ceil(n ** 0.4 * (1 - 1e-12)))


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Tuning for the empirical extremogram and its bands.

    ``block_length=None`` resolves to ``ceil(n ** 0.4)`` once the sample size
    is known; it also truncates the long-run sums behind the CLT bands.
    """

    quantile_level: float = 0.98
    max_lag: int = 40
    block_length: int | None = None
    centering: Centering = Centering.PRE_ASYMPTOTIC
    band_method: BandMethod = BandMethod.NONE
    num_permutations: int = 99
    confidence_level: float = 0.95
    seed: int | None = None
    allow_unbounded: bool = False

    def __post_init__(self):
        object.__setattr__(self, "centering", Centering(self.centering))
        object.__setattr__(self, "band_method", BandMethod(self.band_method))
        if not 0.0 < self.quantile_level < 1.0:
            raise InvalidParameter("quantile_level must lie in (0, 1)")
        if self.max_lag < 0:
            raise InvalidParameter("max_lag must be non-negative")
        if self.block_length is not None and self.block_length < 1:
            raise InvalidParameter("block_length must be at least 1")
        if not 0.0 < self.confidence_level < 1.0:
            raise InvalidParameter("confidence_level must lie in (0, 1)")

    @property
    def m(self) -> float:
        return 1.0 / (1.0 - self.quantile_level)

    def resolved_block_length(self, n: int) -> int:
        r = self.block_length if self.block_length is not None else default_block_length(n)
        if r > math.ceil(self.m):
            warnings.warn(
                f"block length {r} exceeds ceil(m) = {math.ceil(self.m)}",
                TuningWarning,
                stacklevel=3,
            )
        return r

    def to_dict(self) -> dict:
        d = asdict(self)
        d["centering"] = self.centering.value
        d["band_method"] = self.band_method.value
        return d
