"""How interval agreement turns disagreeing intervals into one fuzzy set.

Three overlapping intervals produce a staircase membership function: each
region's height is the fraction of intervals covering it.  The centroid
weighs region midpoints by height, so heavily agreed regions dominate.
"""

import numpy as np

from iaabag import Interval, centroid, iaa_aggregate, membership


def main():
    intervals = [Interval(1, 4), Interval(2, 5), Interval(3, 6)]
    print("intervals:", ", ".join(f"[{iv.lo}, {iv.hi}]" for iv in intervals))

    fs = iaa_aggregate(intervals)
    print(f"\n{'left':>6} {'right':>6} {'height':>8}")
    for region in fs.regions:
        print(f"{region.left:>6.2f} {region.right:>6.2f} {region.height:>8.4f}")

    print(f"\ncentroid: {centroid(fs)}")

    # membership is literally "how many intervals contain x"
    for x in (0.5, 1.5, 3.5, 4.5, 6.5):
        direct = membership(intervals, x)
        via_set = fs.membership(x)
        assert direct == via_set
        covered = sum(iv.contains(x) for iv in intervals)
        print(f"membership({x}) = {direct:.4f}  ({covered} of {len(intervals)} intervals)")

    # shifting every interval shifts the centroid by the same amount
    shifted = [Interval(iv.lo + 10, iv.hi + 10) for iv in intervals]
    print(f"\ncentroid after +10 shift: {centroid(iaa_aggregate(shifted))}")


if __name__ == "__main__":
    main()
