"""
Extremal regions in R^d and a small text syntax for them.

A region is a union of disjuncts; each disjunct is an intersection of
constraints. A constraint restricts either one coordinate to an interval or
a linear combination ``w . x`` to an interval::

    (1,inf)                       x1 > 1
    (-inf,-1)|(1,inf)             |x1| > 1
    [0,inf)@2                     x2 >= 0
    band(0.5 < x1 - x2 < 2)       0.5 < x1 - x2 < 2

Round brackets are open, square brackets closed. ``@k`` binds an interval to
coordinate ``k`` (1-based, default 1). ``&`` binds tighter than ``|``.
Inside ``band(...)`` either ``<`` or ``<=`` may be used on each side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from extremogram.errors import (
    DimensionMismatch,
    InvalidParameter,
    RegionSemanticError,
    RegionSyntaxError,
)

__all__ = [
    "CoordInterval",
    "LinearBand",
    "RegionSpec",
    "parse_region",
    "membership",
]


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(float(v))


def _interval_mask(v, lo, hi, lo_closed, hi_closed):
    lower = v >= lo if lo_closed else v > lo
    upper = v <= hi if hi_closed else v < hi
    return lower & upper


def _distance_to_origin(lo, hi) -> float:
    # distance from 0 to the closure of the interval; 0 when 0 lies in it
    if lo > 0:
        return float(lo)
    if hi < 0:
        return float(-hi)
    return 0.0


@dataclass(frozen=True)
class CoordInterval:
    """``lo < x[coord] < hi`` with per-endpoint closedness; ``coord`` is 0-based."""

    coord: int
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.coord < 0:
            raise RegionSemanticError("coordinate index must be non-negative")
        if math.isnan(self.lo) or math.isnan(self.hi) or not self.lo < self.hi:
            raise RegionSemanticError(f"interval requires lo < hi, got ({self.lo}, {self.hi})")

    @property
    def min_dim(self) -> int:
        return self.coord + 1

    def mask(self, points: np.ndarray) -> np.ndarray:
        return _interval_mask(points[:, self.coord], self.lo, self.hi,
                              self.lo_closed, self.hi_closed)

    def exclusion_radius(self) -> float:
        """Every member ``x`` satisfies ``|x| >= |x[coord]| >= radius``."""
        return _distance_to_origin(self.lo, self.hi)

    def to_text(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{_fmt(self.lo)},{_fmt(self.hi)}{right}@{self.coord + 1}"


@dataclass(frozen=True)
class LinearBand:
    """``lo < weights . x < hi``; ``weights[i]`` multiplies coordinate ``i``."""

    weights: tuple
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        w = tuple(float(c) for c in self.weights)
        object.__setattr__(self, "weights", w)
        if not w or not any(c != 0.0 for c in w):
            raise RegionSemanticError("band needs at least one nonzero weight")
        if not all(math.isfinite(c) for c in w):
            raise RegionSemanticError("band weights must be finite")
        if math.isnan(self.lo) or math.isnan(self.hi) or not self.lo < self.hi:
            raise RegionSemanticError(f"band requires lo < hi, got ({self.lo}, {self.hi})")

    @property
    def min_dim(self) -> int:
        last = max(i for i, c in enumerate(self.weights) if c != 0.0)
        return last + 1

    def mask(self, points: np.ndarray) -> np.ndarray:
        k = len(self.weights)
        w = np.asarray(self.weights)
        if points.shape[1] < k:
            w = w[: points.shape[1]]
            k = points.shape[1]
        v = points[:, :k] @ w
        return _interval_mask(v, self.lo, self.hi, self.lo_closed, self.hi_closed)

    def exclusion_radius(self) -> float:
        # |w . x| <= |w| |x|
        norm = float(np.linalg.norm(self.weights))
        return _distance_to_origin(self.lo, self.hi) / norm

    def to_text(self) -> str:
        parts = []
        for i, c in enumerate(self.weights):
            if c == 0.0:
                continue
            sign = "-" if c < 0 else "+"
            term = f"{_fmt(abs(c))}*x{i + 1}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" {sign} {term}")
        left = "<=" if self.lo_closed else "<"
        right = "<=" if self.hi_closed else "<"
        return f"band({_fmt(self.lo)} {left} {''.join(parts)} {right} {_fmt(self.hi)})"


Constraint = Union[CoordInterval, LinearBand]


@dataclass(frozen=True)
class RegionSpec:
    """
    Union of intersections of constraints.

    Parameters
    ----------
    disjuncts : tuple of tuple of constraints
        ``x`` is a member iff, for some disjunct, every constraint holds.
    dim : int, optional
        Bound dimension. When set, membership requires points of exactly
        this dimension; otherwise any dimension at least ``min_dim`` works,
        which lets ``(1,inf)`` act as ``(1,inf) x R^k`` on embedded series.
    """

    disjuncts: tuple
    dim: int | None = None

    def __post_init__(self):
        disj = tuple(tuple(c) for c in self.disjuncts)
        if not disj or any(len(c) == 0 for c in disj):
            raise RegionSemanticError("region needs at least one nonempty disjunct")
        object.__setattr__(self, "disjuncts", disj)
        if self.dim is not None and self.min_dim > self.dim:
            raise RegionSemanticError(
                f"region refers to coordinate {self.min_dim} but dimension is {self.dim}"
            )

    @property
    def min_dim(self) -> int:
        return max(c.min_dim for conj in self.disjuncts for c in conj)

    def bind(self, dim: int) -> RegionSpec:
        return RegionSpec(self.disjuncts, dim=int(dim))

    def _check_dim(self, d: int):
        if self.dim is not None and d != self.dim:
            raise DimensionMismatch(f"region bound to dimension {self.dim}, got {d}")
        if d < self.min_dim:
            raise DimensionMismatch(
                f"region needs at least {self.min_dim} coordinates, got {d}"
            )

    def contains(self, points) -> np.ndarray:
        """Vectorised membership for an ``(N, d)`` array of points."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        self._check_dim(pts.shape[1])
        out = np.zeros(pts.shape[0], dtype=bool)
        for conj in self.disjuncts:
            hit = np.ones(pts.shape[0], dtype=bool)
            for c in conj:
                hit &= c.mask(pts)
            out |= hit
        return out

    def exclusion_radius(self) -> float:
        """
        Radius ``eps`` such that every member has norm at least ``eps``.

        Zero means no neighbourhood of the origin could be excluded by the
        per-constraint test (which is only a sufficient condition).
        """
        return min(max(c.exclusion_radius() for c in conj) for conj in self.disjuncts)

    def is_bounded_away_from_zero(self) -> bool:
        return self.exclusion_radius() > 0.0

    def contains_origin(self) -> bool:
        d = self.dim if self.dim is not None else self.min_dim
        return bool(self.contains(np.zeros((1, d)))[0])

    def to_text(self) -> str:
        return "|".join("&".join(c.to_text() for c in conj) for conj in self.disjuncts)

    def __str__(self) -> str:
        return self.to_text()

    def intervals_1d(self) -> list:
        """
        Disjoint sorted intervals ``(lo, hi, lo_closed, hi_closed)`` making up
        a region whose constraints are all intervals on the first coordinate.
        """
        pieces = []
        for conj in self.disjuncts:
            lo, hi, lc, hc = -math.inf, math.inf, False, False
            for c in conj:
                if not isinstance(c, CoordInterval) or c.coord != 0:
                    raise RegionSemanticError("region is not a union of intervals on x1")
                if c.lo > lo or (c.lo == lo and not c.lo_closed):
                    lo, lc = c.lo, c.lo_closed
                if c.hi < hi or (c.hi == hi and not c.hi_closed):
                    hi, hc = c.hi, c.hi_closed
            if lo < hi or (lo == hi and lc and hc):
                pieces.append((lo, hi, lc, hc))
        pieces.sort(key=lambda p: (p[0], not p[2]))
        merged = []
        for p in pieces:
            if merged:
                lo, hi, lc, hc = merged[-1]
                touches = p[0] < hi or (p[0] == hi and (hc or p[2]))
                if touches:
                    if p[1] > hi or (p[1] == hi and p[3]):
                        merged[-1] = (lo, p[1], lc, p[3])
                    continue
            merged.append(p)
        return merged


def membership(region: RegionSpec, x) -> bool:
    """Exact indicator of ``x`` in ``region`` for one finite d-vector."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise DimensionMismatch("membership expects a single vector")
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("membership requires a finite vector")
    return bool(region.contains(x[None, :])[0])


class _Parser:
    _number_chars = set("0123456789.eE")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise RegionSyntaxError(message, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, k=1) -> str:
        self.skip()
        return self.text[self.pos : self.pos + k]

    def accept(self, token: str) -> bool:
        if self.peek(len(token)) == token:
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            found = self.peek() or "end of input"
            self.error(f"expected {token!r}, found {found!r}")

    def unsigned_number(self) -> float:
        self.skip()
        start = self.pos
        if self.text.startswith("inf", self.pos):
            self.pos += 3
            return math.inf
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in self._number_chars:
                self.pos += 1
            elif ch in "+-" and self.pos > start and self.text[self.pos - 1] in "eE":
                self.pos += 1
            else:
                break
        literal = self.text[start : self.pos]
        try:
            if not literal:
                raise ValueError
            return float(literal)
        except ValueError:
            self.error("expected a number", start)

    def number(self) -> float:
        sign = 1.0
        if self.accept("-"):
            sign = -1.0
        elif self.accept("+"):
            pass
        return sign * self.unsigned_number()

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a coordinate index")
        return int(self.text[start : self.pos])

    def region(self) -> list:
        disjuncts = [self.term()]
        while self.accept("|"):
            disjuncts.append(self.term())
        return disjuncts

    def term(self) -> list:
        atoms = [self.atom()]
        while self.accept("&"):
            atoms.append(self.atom())
        return atoms

    def atom(self) -> Constraint:
        start = self.pos
        if self.peek(4) == "band":
            return self.band()
        if self.accept("("):
            lo_closed = False
        elif self.accept("["):
            lo_closed = True
        else:
            self.error("expected '(', '[' or 'band'")
        lo = self.number()
        self.expect(",")
        hi = self.number()
        if self.accept(")"):
            hi_closed = False
        elif self.accept("]"):
            hi_closed = True
        else:
            self.error("expected ')' or ']'")
        coord = 1
        if self.accept("@"):
            coord = self.integer()
        if coord < 1:
            raise RegionSemanticError(f"coordinate indices are 1-based, got @{coord}")
        if not lo < hi:
            raise RegionSemanticError(
                f"interval at position {start} requires lo < hi, got ({lo}, {hi})"
            )
        return CoordInterval(coord - 1, lo, hi, lo_closed, hi_closed)

    def comparison(self) -> bool:
        if self.accept("<="):
            return True
        if self.accept("<"):
            return False
        self.error("expected '<' or '<='")

    def band(self) -> LinearBand:
        start = self.pos
        self.expect("band")
        self.expect("(")
        lo = self.number()
        lo_closed = self.comparison()
        weights = self.linexpr()
        hi_closed = self.comparison()
        hi = self.number()
        self.expect(")")
        if not lo < hi:
            raise RegionSemanticError(
                f"band at position {start} requires lo < hi, got ({lo}, {hi})"
            )
        return LinearBand(tuple(weights), lo, hi, lo_closed, hi_closed)

    def linexpr(self) -> list:
        weights: dict[int, float] = {}
        sign = 1.0
        if self.accept("-"):
            sign = -1.0
        else:
            self.accept("+")
        while True:
            coef = 1.0
            if self.peek() != "x":
                coef = self.unsigned_number()
                self.accept("*")
            self.expect("x")
            idx = self.integer()
            if idx < 1:
                raise RegionSemanticError(f"coordinate indices are 1-based, got x{idx}")
            weights[idx - 1] = weights.get(idx - 1, 0.0) + sign * coef
            if self.accept("-"):
                sign = -1.0
            elif self.accept("+"):
                sign = 1.0
            else:
                break
        w = [0.0] * (max(weights) + 1)
        for i, c in weights.items():
            w[i] = c
        return w


def parse_region(text: str, dim: int | None = None) -> RegionSpec:
    """
    Parse region text into a :class:`RegionSpec`.

    Raises :class:`RegionSyntaxError` (carrying the character position) for
    malformed text and :class:`RegionSemanticError` for ``lo >= hi`` or, when
    ``dim`` is given, a coordinate index beyond ``dim``.
    """
    parser = _Parser(text)
    disjuncts = parser.region()
    parser.skip()
    if parser.pos != len(text):
        parser.error(f"unexpected {text[parser.pos]!r}")
    return RegionSpec(tuple(tuple(c) for c in disjuncts), dim=dim)


def as_region(region: Union[str, RegionSpec]) -> RegionSpec:
    if isinstance(region, RegionSpec):
        return region
    return parse_region(region)
