"""Point estimators of the category probabilities from the stopping point."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    NotBoundary,
    NotClosedAtHorizon,
    NotOnBoundary,
    OrderTooSmall,
    UnknownPoint,
    ZeroOrder,
)
from .lattice import OutcomeModel, Point, Region, order
from .path_counting import PathCountTable, count_paths, first_passage_pmf
from .region_analysis import is_closed


@dataclass(frozen=True)
class StopObservation:
    y: Point
    N: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(int(c) for c in self.y))
        object.__setattr__(self, "N", order(self.y))


def unbiased_estimate(table: PathCountTable, y: Sequence[int]) -> tuple[Fraction, ...]:
    """``k*_i(y) / k(y)`` for each category."""
    y = tuple(y)
    if len(y) != table.k:
        raise UnknownPoint(f"{y} does not have {table.k} coordinates")
    if order(y) > table.horizon:
        raise UnknownPoint(f"{y} lies beyond the table horizon {table.horizon}")
    if not table.region.is_boundary(y) or y not in table.counts:
        raise NotBoundary(f"{y} is not a boundary point")
    total = table.total(y)
    return tuple(Fraction(s, total) for s in table.from_unit(y))


def ml_estimate(y: Sequence[int]) -> tuple[Fraction, ...]:
    """Sample proportions ``y_i / N``."""
    N = order(y)
    if N < 1:
        raise ZeroOrder("the observation has order 0")
    return tuple(Fraction(c, N) for c in y)


def _one_step(y: Point) -> tuple[Fraction, ...]:
    # a single-step hit has k = k*_i = 1 for the category taken
    return tuple(Fraction(c) for c in y)


def closed_form_lattice2d(y: Sequence[int], b: int) -> tuple[Fraction, ...]:
    """Closed forms for the planar walk stopped when its second coordinate reaches ``b``.

    Categories: (up, right, down, left); the stopping level is ``y_1 - y_3``.
    """
    y = tuple(y)
    if len(y) != 4 or y[0] - y[2] != b or b < 1:
        raise NotOnBoundary(f"{y} does not satisfy y1 - y3 = {b}")
    N = order(y)
    if N == 1:
        return _one_step(y)
    up, right, down, left = y
    d = N - 1
    return (Fraction((b - 1) * up, b * d), Fraction(right, d),
            Fraction((b + 1) * down, b * d), Fraction(left, d))


def closed_form_nullstep(y: Sequence[int], b: int) -> tuple[Fraction, ...]:
    """Closed forms for the walk with steps +1/0/-1 stopped on first reaching ``b``."""
    y = tuple(y)
    if len(y) != 3 or y[0] - y[2] != b or b < 1:
        raise NotOnBoundary(f"{y} does not satisfy y1 - y3 = {b}")
    N = order(y)
    if N < 1:
        raise OrderTooSmall("order 0")
    if N == 1:
        return _one_step(y)
    up, null, down = y
    d = N - 1
    return (Fraction((b - 1) * up, b * d), Fraction(null, d), Fraction((b + 1) * down, b * d))


CLOSED_FORMS = {"lattice2d": closed_form_lattice2d, "nullstep": closed_form_nullstep}
CLOSED_FORM_COEFFS = {"lattice2d": (1, 0, -1, 0), "nullstep": (1, 0, -1)}


@dataclass(frozen=True)
class EstimateReport:
    observation: StopObservation
    unbiased: tuple[Fraction, ...]
    ml: tuple[Fraction, ...]
    method: str


def estimate(y: Sequence[int], table: PathCountTable | None = None,
             closed_form: str | None = None, b: int | None = None) -> EstimateReport:
    """Both estimator families for one observation."""
    obs = StopObservation(y)
    if closed_form is not None:
        unb = CLOSED_FORMS[closed_form](obs.y, b)
        method = f"closed-form {closed_form} (b={b})"
    else:
        unb = unbiased_estimate(table, obs.y)
        method = "path counts"
    return EstimateReport(obs, unb, ml_estimate(obs.y), method)


@dataclass(frozen=True)
class IdentityCheck:
    p: tuple[Fraction, ...]
    category: int
    expected: Fraction
    computed: Fraction

    @property
    def holds(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class VerificationReport:
    horizon: int
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def failing_points(self) -> list[tuple[Fraction, ...]]:
        seen = []
        for c in self.checks:
            if not c.holds and c.p not in seen:
                seen.append(c.p)
        return seen

    def to_json(self) -> dict:
        return {
            "result": "PASS" if self.passed else "FAIL",
            "horizon": self.horizon,
            "checks": [{"p": [str(v) for v in c.p], "category": c.category + 1,
                        "expected": str(c.expected), "computed": str(c.computed),
                        "holds": c.holds} for c in self.checks],
        }


def verify_unbiasedness(region: Region, horizon: int, p_grid,
                        estimator: Callable | None = None) -> VerificationReport:
    """Check ``sum_y est_i(y) P(y) == p_i`` exactly for each grid point.

    ``estimator(table, y)`` defaults to :func:`unbiased_estimate`; pass another
    one (e.g. ML) as a negative control.
    """
    if estimator is None:
        estimator = unbiased_estimate
    table = count_paths(region, horizon)
    checks = []
    for p in p_grid:
        model = OutcomeModel(tuple(Fraction(v) for v in p))
        closed = is_closed(region, model, horizon)
        if closed.verdict != "ClosedExact":
            raise NotClosedAtHorizon(
                f"residual mass {closed.residual_mass} at horizon {horizon} for p={p}")
        pmf = first_passage_pmf(table, model)
        est = {y: estimator(table, y) for y in pmf}
        for i in range(region.k):
            total = sum((est[y][i] * pmf[y] for y in pmf), Fraction(0))
            checks.append(IdentityCheck(model.p, i, model.p[i], total))
    return VerificationReport(horizon, tuple(checks))
