"""Intervals, piecewise-constant type-1 fuzzy sets, and the Interval
Agreement Approach (IAA).

The IAA turns a collection of closed real intervals into a fuzzy set whose
membership at a point x is the fraction of intervals that contain x.  The
resulting membership function is a step function; we store it as an ordered
list of constant-height regions.  Defuzzification uses a height-weighted
mean of the region endpoints (each region contributes its two endpoints
weighted by its height, independent of its width).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Interval",
    "Region",
    "Type1FuzzySet",
    "membership",
    "iaa_aggregate",
    "centroid",
]

_HEIGHT_TOL = 1e-9


@dataclass(frozen=True, order=True)
class Interval:
    """Closed real interval [lo, hi].  Degenerate points (lo == hi) allowed."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class Region:
    """One constant-height piece of a step membership function."""

    left: float
    right: float
    height: float

    def __post_init__(self):
        if self.left > self.right:
            raise ValueError(f"region endpoints out of order: [{self.left}, {self.right}]")
        if not 0.0 < self.height <= 1.0:
            raise ValueError(f"region height must be in (0, 1], got {self.height}")


@dataclass(frozen=True)
class Type1FuzzySet:
    """Step membership function built from ``n_sources`` input intervals.

    Regions are sorted left to right with non-overlapping interiors, and
    every height is a multiple of 1/n_sources (the agreement count divided
    by the number of sources).  Point regions (left == right) only appear
    where an input interval was itself a single point.
    """

    regions: tuple[Region, ...]
    n_sources: int

    def __post_init__(self):
        if self.n_sources < 1:
            raise ValueError(f"n_sources must be positive, got {self.n_sources}")
        if not self.regions:
            raise ValueError("fuzzy set needs at least one region")
        for prev, cur in zip(self.regions, self.regions[1:]):
            if prev.right > cur.left:
                raise ValueError(
                    f"regions overlap: [{prev.left}, {prev.right}] then [{cur.left}, {cur.right}]"
                )
        for r in self.regions:
            scaled = r.height * self.n_sources
            if abs(scaled - round(scaled)) > _HEIGHT_TOL * self.n_sources:
                raise ValueError(
                    f"height {r.height} is not a multiple of 1/{self.n_sources}"
                )

    @property
    def support(self) -> Interval:
        """Smallest interval covering all regions."""
        return Interval(self.regions[0].left, self.regions[-1].right)

    def membership(self, x: float) -> float:
        """Height of the set at x: max height over regions containing x, 0 outside.

        Shared region boundaries take the larger neighbouring height, which
        matches interval-counting membership everywhere except at isolated
        contact points of non-degenerate inputs (deliberately not stored).
        """
        best = 0.0
        for r in self.regions:
            if r.left <= x <= r.right:
                best = max(best, r.height)
            elif r.left > x:
                break
        return best


def membership(intervals: list[Interval], x: float) -> float:
    """Fraction of intervals containing x (the IAA membership at x)."""
    if not intervals:
        raise ValueError("membership needs at least one interval")
    hits = sum(1 for iv in intervals if iv.contains(x))
    return hits / len(intervals)


def iaa_aggregate(intervals: list[Interval]) -> Type1FuzzySet:
    """Fuse intervals into a type-1 fuzzy set by agreement counting.

    The real line is cut at every distinct interval endpoint; each span
    between consecutive cuts becomes a region whose height is the fraction
    of intervals covering it (sampled at the span midpoint).  Spans covered
    by no interval are dropped.  A degenerate input interval additionally
    contributes a point region, so its agreement survives defuzzification.

    >>> fs = iaa_aggregate([Interval(1, 4), Interval(2, 5), Interval(3, 6)])
    >>> [(r.left, r.right, round(r.height, 4)) for r in fs.regions]
    [(1, 2, 0.3333), (2, 3, 0.6667), (3, 4, 1.0), (4, 5, 0.6667), (5, 6, 0.3333)]
    """
    if not intervals:
        raise ValueError("iaa_aggregate needs at least one interval")
    n = len(intervals)

    cuts = sorted({p for iv in intervals for p in (iv.lo, iv.hi)})
    regions = []
    for left, right in zip(cuts, cuts[1:]):
        mid = 0.5 * (left + right)
        hits = sum(1 for iv in intervals if iv.contains(mid))
        if hits:
            regions.append(Region(left, right, hits / n))

    for p in sorted({iv.lo for iv in intervals if iv.is_point}):
        hits = sum(1 for iv in intervals if iv.contains(p))
        regions.append(Region(p, p, hits / n))

    regions.sort(key=lambda r: (r.left, r.right))
    return Type1FuzzySet(tuple(regions), n)


def centroid(fs: Type1FuzzySet) -> float:
    """Defuzzify by the height-weighted mean of region endpoints.

    Every region contributes height * (left + right) to the numerator and
    2 * height to the denominator; widths carry no weight.  Equivalent to a
    height-weighted average of region midpoints, so the result always lies
    within the support of the set.
    """
    if not fs.regions:
        raise ValueError("centroid of an empty fuzzy set is undefined")
    num = sum(r.height * (r.left + r.right) for r in fs.regions)
    den = sum(2.0 * r.height for r in fs.regions)
    return num / den
