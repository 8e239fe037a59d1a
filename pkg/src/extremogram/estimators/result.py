from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from extremogram.core.config import Centering


def _list_or_none(a, cast=float):
    if a is None:
        return None
    return [cast(v) for v in np.asarray(a).tolist()]


@dataclass(frozen=True, eq=False)
class ExtremogramResult:
    """
    Per-lag extremogram estimates for lags ``0..H``.

    ``rho[h] = numerator_counts[h] / denominator_count``. ``variance`` holds
    the plug-in asymptotic variance of ``sqrt(n/m) * rho[h]`` when CLT bands
    were computed. ``baseline`` is the level expected under independence.
    ``reference`` is an optional theoretical curve drawn alongside.
    """

    lags: np.ndarray
    rho: np.ndarray
    numerator_counts: np.ndarray
    denominator_count: int
    n: int
    baseline: float
    centering_used: Centering = Centering.PRE_ASYMPTOTIC
    variance: np.ndarray | None = None
    band_lo: np.ndarray | None = None
    band_hi: np.ndarray | None = None
    reference: np.ndarray | None = None
    config: dict = field(default_factory=dict)

    @property
    def max_lag(self) -> int:
        return int(self.lags[-1])

    def to_dict(self) -> dict:
        return {
            "lags": _list_or_none(self.lags, int),
            "rho": _list_or_none(self.rho),
            "band_lo": _list_or_none(self.band_lo),
            "band_hi": _list_or_none(self.band_hi),
            "baseline": float(self.baseline),
            "counts": {
                "numerator": _list_or_none(self.numerator_counts, int),
                "denominator": int(self.denominator_count),
                "n": int(self.n),
            },
            "config": dict(self.config, centering=Centering(self.centering_used).value),
            "variance": _list_or_none(self.variance),
            "reference": _list_or_none(self.reference),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ExtremogramResult:
        def arr(key, dtype=float):
            v = d.get(key)
            return None if v is None else np.asarray(v, dtype=dtype)

        config = dict(d.get("config", {}))
        centering = Centering(config.pop("centering", Centering.PRE_ASYMPTOTIC.value))
        counts = d["counts"]
        return cls(
            lags=np.asarray(d["lags"], dtype=int),
            rho=np.asarray(d["rho"], dtype=float),
            numerator_counts=np.asarray(counts["numerator"], dtype=np.int64),
            denominator_count=int(counts["denominator"]),
            n=int(counts["n"]),
            baseline=float(d["baseline"]),
            centering_used=centering,
            variance=arr("variance"),
            band_lo=arr("band_lo"),
            band_hi=arr("band_hi"),
            reference=arr("reference"),
            config=config,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ExtremogramResult:
        return cls.from_dict(json.loads(text))

    def csv_rows(self) -> list:
        rows = []
        for i, lag in enumerate(self.lags):
            lo = "" if self.band_lo is None else repr(float(self.band_lo[i]))
            hi = "" if self.band_hi is None else repr(float(self.band_hi[i]))
            rows.append([int(lag), repr(float(self.rho[i])), lo, hi,
                         repr(float(self.baseline))])
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lag", "rho", "lo", "hi", "baseline"])
        writer.writerows(self.csv_rows())
        return buf.getvalue()
