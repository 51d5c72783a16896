from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CURTAILED, STOP_AFTER_2, TRINOMIAL, lattice2d, nullstep
from oracles import enumerate_stopped_paths
from stopwalk import (
    ExplicitRegion,
    LinearRegion,
    OutcomeModel,
    count_paths,
    cycle_count_first_passage,
    first_passage_pmf,
    mass_balance,
)
from stopwalk.errors import DimensionMismatch, HorizonExceeded, NotOnBoundary


def assert_structural(table):
    origin = (0,) * table.k
    if origin in table.counts:
        assert table.counts[origin] == (1, (0,) * table.k)
    for x, (tot, star) in table.counts.items():
        if x != origin:
            assert tot == sum(star)


def test_curtailed_counts():
    t = count_paths(CURTAILED, 4)
    assert t.total((2, 1)) == 2 and t.from_unit((2, 1)) == (1, 1)
    assert_structural(t)


def test_stop_after_2_counts():
    t = count_paths(STOP_AFTER_2, 2)
    assert t.total((1, 1)) == 2 and t.from_unit((1, 1))[0] == 1
    assert_structural(t)


def test_nullstep_counts():
    t = count_paths(nullstep(2), 4)
    assert t.total((3, 0, 1)) == 2 and t.from_unit((3, 0, 1))[0] == 1
    assert_structural(t)


def test_unit_points_convention():
    # e_1 is itself on the boundary: one-step absorption still counts k*_1 = 1
    r = LinearRegion(coeffs=(1, 0), target=1, max_order=5)
    t = count_paths(r, 3)
    assert t.counts[(1, 0)] == (1, (1, 0))
    assert t.counts[(0, 1)] == (1, (0, 1))


def test_first_passage_pmf_examples():
    half = OutcomeModel(("1/2", "1/2"))
    assert first_passage_pmf(count_paths(STOP_AFTER_2, 2), half)[(1, 1)] == Fraction(1, 2)
    assert first_passage_pmf(count_paths(CURTAILED, 4), half)[(2, 1)] == Fraction(1, 4)
    m = OutcomeModel(("1/2", "1/4", "1/4"))
    assert first_passage_pmf(count_paths(nullstep(2), 4), m)[(3, 0, 1)] == Fraction(1, 16)
    with pytest.raises(DimensionMismatch):
        first_passage_pmf(count_paths(CURTAILED, 3), m)


def test_float_pmf_matches_exact():
    t = count_paths(nullstep(3), 15)
    exact = first_passage_pmf(t, OutcomeModel(("2/5", "3/10", "3/10")))
    approx = first_passage_pmf(t, OutcomeModel((0.4, 0.3, 0.3)))
    for y in exact:
        assert approx[y] == pytest.approx(float(exact[y]), rel=1e-12)


def test_cycle_count_examples():
    assert cycle_count_first_passage(2, (3, 0, 1), 0, 2) == 2
    assert cycle_count_first_passage(2, (2, 1, 0), 0, 2) == 2
    assert cycle_count_first_passage(1, (1, 0, 0), 0, 2) == 1
    y = (12, 3, 2, 1)
    expected = 10 * factorial(18) // (18 * factorial(12) * factorial(3) * factorial(2))
    assert cycle_count_first_passage(10, y, 0, 2) == expected
    t = count_paths(lattice2d(10, horizon=18), 18)
    assert t.total(y) == expected
    with pytest.raises(NotOnBoundary):
        cycle_count_first_passage(2, (2, 0, 1), 0, 2)


@pytest.mark.parametrize("b", [1, 2, 3])
def test_cycle_lemma_matches_dp_nullstep(b):
    t = count_paths(nullstep(b, horizon=20), 20)
    assert_structural(t)
    assert len(t.boundary) > 0
    for y in t.boundary:
        assert cycle_count_first_passage(b, y, 0, 2) == t.total(y)


@pytest.mark.parametrize("b", [1, 2])
def test_cycle_lemma_matches_dp_lattice2d(b):
    t = count_paths(lattice2d(b, horizon=14), 14)
    assert_structural(t)
    for y in t.boundary:
        assert cycle_count_first_passage(b, y, 0, 2) == t.total(y)


@pytest.mark.parametrize("region,h", [
    (CURTAILED, 4), (STOP_AFTER_2, 2), (TRINOMIAL, 4), (nullstep(2, 8), 8),
    (LinearRegion(coeffs=(2, -1), target=3, max_order=8), 8),
    (LinearRegion(coeffs=(1, -2, 1), target=2, max_order=7), 7),
])
def test_counts_match_brute_force(region, h):
    t = count_paths(region, h)
    brute = enumerate_stopped_paths(region.admits, region.k, h)
    assert set(brute) == set(t.boundary)
    for y, (tot, star) in brute.items():
        assert t.counts[y] == (tot, tuple(star))


@pytest.mark.parametrize("h", [0, 1, 4, 9])
@pytest.mark.parametrize("p", [("1/3", "1/3", "1/3"), ("1/2", "1/6", "1/3")])
def test_conservation(h, p):
    t = count_paths(nullstep(3, horizon=12), h)
    absorbed, frontier = mass_balance(t, OutcomeModel(p))
    assert absorbed + frontier == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.integers(1, 3), st.integers(0, 6))
def test_random_linear_regions_structural(coeffs, target, h):
    r = LinearRegion(coeffs=tuple(coeffs), target=target, max_order=6)
    t = count_paths(r, h)
    assert_structural(t)
    absorbed, frontier = mass_balance(t, OutcomeModel(("1/2", "1/3", "1/6")))
    assert absorbed + frontier == 1


def test_retain_boundary_only_keeps_needed_points():
    full = count_paths(nullstep(3, 20), 12)
    slim = count_paths(nullstep(3, 20), 12, retain_all=False)
    for y in full.boundary:
        assert slim.counts[y] == full.counts[y]
    for x in full.frontier:
        assert slim.counts[x] == full.counts[x]
    assert len(slim.counts) < len(full.counts)


def test_horizon_guard():
    with pytest.raises(HorizonExceeded):
        count_paths(nullstep(2, horizon=5), 6)


def test_explicit_single_origin():
    t = count_paths(ExplicitRegion(points=frozenset({(0, 0)})), 3)
    assert set(t.boundary) == {(1, 0), (0, 1)}
