"""Exact unbiasedness of the path-count estimator on a few regions, ML as control."""
from fractions import Fraction as F

from stopwalk import ExplicitRegion, LinearRegion, ml_estimate, verify_unbiasedness

GRID = [(F(1, 3), F(2, 3)), (F(1, 5), F(4, 5)), (F(3, 4), F(1, 4))]
REGIONS = {
    "curtailed (3 of 4)": (ExplicitRegion(frozenset(
        (a, c) for a in range(3) for c in range(2)), 2), 4),
    "fixed n=2": (LinearRegion((1, 1), 2, 2), 2),
    "nullstep-like b=2": (ExplicitRegion(frozenset(
        (a, c) for a in range(6) for c in range(6) if a - c < 2 and a + c <= 8), 2), 9),
}


def main():
    for name, (region, h) in REGIONS.items():
        rep = verify_unbiasedness(region, h, GRID)
        ctl = verify_unbiasedness(region, h, GRID, estimator=lambda t, y: ml_estimate(y))
        print(f"{name:22s} unbiased: {'PASS' if rep.passed else 'FAIL'}   "
              f"ML biased at {len(ctl.failing_points())}/{len(GRID)} grid points")


if __name__ == "__main__":
    main()
