import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iaabag.fuzzy import Interval, Region, Type1FuzzySet, centroid, iaa_aggregate, membership

THIRD = 1.0 / 3.0


def brute_membership(intervals, x):
    """Counting definition: fraction of intervals containing x."""
    return sum(iv.lo <= x <= iv.hi for iv in intervals) / len(intervals)


class TestInterval:
    def test_contains_is_closed(self):
        iv = Interval(1.0, 2.0)
        assert iv.contains(1.0) and iv.contains(2.0) and iv.contains(1.5)
        assert not iv.contains(0.999) and not iv.contains(2.001)

    def test_point_interval(self):
        iv = Interval(3.0, 3.0)
        assert iv.is_point and iv.contains(3.0)

    @pytest.mark.parametrize("lo,hi", [(2.0, 1.0), (float("nan"), 1.0),
                                       (0.0, float("inf"))])
    def test_rejects_bad_bounds(self, lo, hi):
        with pytest.raises(ValueError):
            Interval(lo, hi)


class TestRegionAndSet:
    def test_region_validation(self):
        with pytest.raises(ValueError):
            Region(2.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            Region(1.0, 2.0, 0.0)
        with pytest.raises(ValueError):
            Region(1.0, 2.0, 1.5)

    def test_set_requires_sorted_disjoint_regions(self):
        r1 = Region(0.0, 1.0, 0.5)
        r2 = Region(0.5, 2.0, 0.5)
        with pytest.raises(ValueError):
            Type1FuzzySet((r2, r1), n_sources=2)
        with pytest.raises(ValueError):
            Type1FuzzySet((r1, r2), n_sources=2)

    def test_heights_must_sit_on_the_count_grid(self):
        with pytest.raises(ValueError):
            Type1FuzzySet((Region(0.0, 1.0, 0.4),), n_sources=3)

    def test_support(self):
        fs = iaa_aggregate([Interval(1, 4), Interval(2, 5)])
        assert fs.support == Interval(1.0, 5.0)
        lo, hi = fs.support
        assert (lo, hi) == (1.0, 5.0)


class TestWorkedExample:
    """Three staggered intervals: the canonical staircase."""

    INTERVALS = [Interval(1, 4), Interval(2, 5), Interval(3, 6)]
    EXPECTED = [
        (1.0, 2.0, THIRD),
        (2.0, 3.0, 2 * THIRD),
        (3.0, 4.0, 1.0),
        (4.0, 5.0, 2 * THIRD),
        (5.0, 6.0, THIRD),
    ]

    def test_regions_exact(self):
        fs = iaa_aggregate(self.INTERVALS)
        got = [(r.left, r.right, r.height) for r in fs.regions]
        assert got == self.EXPECTED

    def test_centroid_exact(self):
        assert centroid(iaa_aggregate(self.INTERVALS)) == 3.5

    def test_centroid_is_height_weighted_not_width_weighted(self):
        # two regions, same heights, different widths: widths must not
        # change the weighting of the midpoints
        fs = Type1FuzzySet((Region(0.0, 2.0, 0.5), Region(10.0, 11.0, 0.5)),
                           n_sources=2)
        midpoints = (1.0 + 10.5) / 2
        assert centroid(fs) == pytest.approx(midpoints)

    def test_membership_function(self):
        fs = iaa_aggregate(self.INTERVALS)
        for x, expect in [(0.5, 0.0), (1.5, THIRD), (2.5, 2 * THIRD),
                          (3.5, 1.0), (4.5, 2 * THIRD), (5.5, THIRD), (7.0, 0.0)]:
            assert fs.membership(x) == expect
            assert membership(self.INTERVALS, x) == expect


class TestDegenerateInputs:
    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            iaa_aggregate([])

    def test_identical_point_intervals_collapse(self):
        fs = iaa_aggregate([Interval(1, 1)] * 4)
        assert fs.regions == (Region(1.0, 1.0, 1.0),)
        assert centroid(fs) == 1.0

    def test_identical_intervals_collapse_to_full_height(self):
        fs = iaa_aggregate([Interval(2, 3)] * 5)
        assert fs.regions == (Region(2.0, 3.0, 1.0),)
        assert centroid(fs) == 2.5

    def test_disjoint_intervals_leave_no_bridge_region(self):
        fs = iaa_aggregate([Interval(0, 1), Interval(2, 3)])
        assert fs.regions == (Region(0.0, 1.0, 0.5), Region(2.0, 3.0, 0.5))
        assert fs.membership(1.5) == 0.0

    def test_point_interval_among_wide_ones(self):
        fs = iaa_aggregate([Interval(0, 2), Interval(1, 1)])
        assert fs.membership(1.0) == 1.0
        assert fs.membership(0.5) == 0.5

    def test_single_interval(self):
        fs = iaa_aggregate([Interval(-1.0, 1.0)])
        assert fs.regions == (Region(-1.0, 1.0, 1.0),)
        assert centroid(fs) == 0.0


# hypothesis strategies ------------------------------------------------------

finite = st.floats(min_value=-100.0, max_value=100.0,
                   allow_nan=False, allow_infinity=False)


@st.composite
def interval_lists(draw, max_size=10):
    n = draw(st.integers(min_value=1, max_value=max_size))
    out = []
    for _ in range(n):
        a = draw(finite)
        b = draw(finite)
        out.append(Interval(min(a, b), max(a, b)))
    return out


@given(interval_lists(), st.lists(finite, min_size=1, max_size=20))
def test_membership_matches_counting_oracle(intervals, probes):
    fs = iaa_aggregate(intervals)
    endpoints = {iv.lo for iv in intervals} | {iv.hi for iv in intervals}
    for x in probes:
        if x in endpoints:
            continue  # piecewise representation is unspecified on cut points
        assert fs.membership(x) == brute_membership(intervals, x)


@given(interval_lists(), st.randoms(use_true_random=False))
def test_aggregate_is_permutation_invariant(intervals, rnd):
    shuffled = list(intervals)
    rnd.shuffle(shuffled)
    assert iaa_aggregate(shuffled) == iaa_aggregate(intervals)


@given(interval_lists())
def test_heights_are_quantized_fractions(intervals):
    n = len(intervals)
    for region in iaa_aggregate(intervals).regions:
        count = region.height * n
        assert math.isclose(count, round(count), abs_tol=1e-9)
        assert 1 <= round(count) <= n


@given(interval_lists())
def test_regions_sorted_and_disjoint(intervals):
    regions = iaa_aggregate(intervals).regions
    for a, b in zip(regions, regions[1:]):
        assert a.right <= b.left or (a.right == b.left)
        assert a.left <= b.left


@given(interval_lists())
def test_support_spans_input_hull(intervals):
    fs = iaa_aggregate(intervals)
    lo, hi = fs.support
    assert lo == min(iv.lo for iv in intervals)
    assert hi == max(iv.hi for iv in intervals)


@given(interval_lists())
def test_centroid_stays_inside_support(intervals):
    fs = iaa_aggregate(intervals)
    lo, hi = fs.support
    assert lo - 1e-9 <= centroid(fs) <= hi + 1e-9


# eighths make translation exact in binary floats, so the staircase keeps
# its shape and only the centroid moves
dyadic = st.integers(min_value=-800, max_value=800).map(lambda k: k / 8.0)


@st.composite
def dyadic_interval_lists(draw, max_size=10):
    n = draw(st.integers(min_value=1, max_value=max_size))
    out = []
    for _ in range(n):
        a, b = draw(dyadic), draw(dyadic)
        out.append(Interval(min(a, b), max(a, b)))
    return out


@given(dyadic_interval_lists(), dyadic)
@settings(max_examples=60)
def test_centroid_translation_equivariance(intervals, shift):
    base = centroid(iaa_aggregate(intervals))
    moved = centroid(iaa_aggregate([Interval(iv.lo + shift, iv.hi + shift)
                                    for iv in intervals]))
    assert moved == pytest.approx(base + shift, abs=1e-9)


@given(st.integers(min_value=1, max_value=8), finite, finite)
def test_repeating_one_interval_is_idempotent(copies, a, b):
    lo, hi = min(a, b), max(a, b)
    fs = iaa_aggregate([Interval(lo, hi)] * copies)
    assert fs.regions == (Region(lo, hi, 1.0),)
