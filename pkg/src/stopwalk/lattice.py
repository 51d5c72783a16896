"""Lattice points, outcome models and stopping regions.

A point ``x`` is a tuple of ``k`` non-negative counts; its order is ``sum(x)``.
A region is described by a membership rule; the accessible set is always the
part of the rule that can be reached from the origin through accessible
points, and the boundary is derived from it (points outside the accessible
set one unit step away from it).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DegenerateCategoryCount,
    EmptyRegion,
    HorizonExceeded,
    InvalidModel,
    OriginNotAccessible,
)

Point = tuple[int, ...]

SUM_TOLERANCE = 1e-12


def order(x: Sequence[int]) -> int:
    return sum(x)


def successors(x: Sequence[int], k: int | None = None) -> list[Point]:
    """The ``k`` points ``x + e_i``, in category order."""
    x = tuple(x)
    if k is not None and k != len(x):
        raise ValueError(f"point {x} does not have {k} coordinates")
    return [x[:i] + (x[i] + 1,) + x[i + 1:] for i in range(len(x))]


def predecessors(x: Sequence[int]) -> list[tuple[int, Point]]:
    """Pairs ``(i, x - e_i)`` for every coordinate with ``x_i > 0``."""
    x = tuple(x)
    return [(i, x[:i] + (x[i] - 1,) + x[i + 1:]) for i in range(len(x)) if x[i] > 0]


def simplex_points(n: int, k: int) -> Iterator[Point]:
    """All points of order ``n`` in ``N^k``, lexicographically ascending."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in simplex_points(n - first, k - 1):
            yield (first,) + rest


def unit(i: int, k: int) -> Point:
    return tuple(1 if j == i else 0 for j in range(k))


def _parse_prob(value) -> Fraction | float:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    text = str(value).strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return float(text)


@dataclass(frozen=True)
class OutcomeModel:
    """Category probabilities of the repeated experiment.

    Probabilities given as ``Fraction``/``int``/``"a/b"`` strings make the model
    exact; any decimal entry switches the whole model to float mode.
    Zero probabilities are allowed so that degenerate walks can be simulated.
    """

    p: tuple
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        parsed = [_parse_prob(v) for v in self.p]
        if not all(isinstance(v, Fraction) for v in parsed):
            parsed = [float(v) for v in parsed]
        object.__setattr__(self, "p", tuple(parsed))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.p):
                raise InvalidModel("labels and p differ in length")
        if len(self.p) < 2:
            raise DegenerateCategoryCount("an outcome model needs k >= 2 categories")
        if any(v < 0 for v in self.p):
            raise InvalidModel(f"negative probability in {self.p}")
        total = sum(self.p)
        if self.exact:
            if total != 1:
                raise InvalidModel(f"probabilities sum to {total}, not 1")
        elif abs(math.fsum(self.p) - 1.0) > SUM_TOLERANCE:
            raise InvalidModel(f"probabilities sum to {math.fsum(self.p)}, not 1")

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.p)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"p{i + 1}"


@dataclass(frozen=True)
class RegionSlice:
    order: int
    accessible: tuple[Point, ...]
    boundary: tuple[Point, ...]
    inaccessible: tuple[Point, ...]


@dataclass(frozen=True, eq=False)
class Region:
    """Base class: subclasses provide ``k``, ``horizon``, ``finite`` and ``admits``.

    ``admits`` is the raw membership rule. Enumeration caches the reachable
    layers ``(R_n, B_n)`` lazily; instances are otherwise immutable.
    """

    _layers: list = field(default_factory=list, init=False, repr=False, compare=False)

    k: int = field(init=False, default=0)
    horizon: int = field(init=False, default=0)
    finite: bool = field(init=False, default=True)

    def admits(self, x: Point) -> bool:
        raise NotImplementedError

    def check_horizon(self, n: int) -> None:
        if not self.finite and n > self.horizon:
            raise HorizonExceeded(f"order {n} exceeds region horizon {self.horizon}")

    def layer(self, n: int) -> tuple[frozenset, frozenset]:
        """``(R_n, B_n)`` as frozensets; no horizon check."""
        layers = self._layers
        if not layers:
            origin = (0,) * self.k
            if not self.admits(origin):
                raise OriginNotAccessible("the origin is not accessible")
            layers.append((frozenset([origin]), frozenset()))
        while len(layers) <= n:
            prev = layers[-1][0]
            acc, bnd = set(), set()
            for x in prev:
                for y in successors(x):
                    if y in acc or y in bnd:
                        continue
                    (acc if self.admits(y) else bnd).add(y)
            layers.append((frozenset(acc), frozenset(bnd)))
        return layers[n]

    def is_accessible(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return x in self.layer(order(x))[0]

    def is_boundary(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return x in self.layer(order(x))[1]

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class ExplicitRegion(Region):
    """A finite accessible set given point by point."""

    points: frozenset = frozenset()
    dim: int | None = None

    def __post_init__(self):
        pts = frozenset(tuple(int(c) for c in x) for x in self.points)
        object.__setattr__(self, "points", pts)
        dims = {len(x) for x in pts}
        if len(dims) > 1:
            raise DegenerateCategoryCount(f"points of mixed dimension {sorted(dims)}")
        k = dims.pop() if dims else (self.dim or 0)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "horizon", max((order(x) for x in pts), default=0) + 1)
        object.__setattr__(self, "finite", True)

    def admits(self, x: Point) -> bool:
        return x in self.points

    def to_json(self) -> dict:
        return {"type": "explicit", "accessible": [list(x) for x in sorted(self.points)]}


@dataclass(frozen=True, eq=False)
class LinearRegion(Region):
    """Accessible iff ``coeffs . x < target`` (and reachable)."""

    coeffs: tuple[int, ...] = ()
    target: int = 0
    max_order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        object.__setattr__(self, "k", len(self.coeffs))
        object.__setattr__(self, "horizon", int(self.max_order))
        # all-positive coefficients bound the accessible orders
        object.__setattr__(self, "finite", bool(self.coeffs) and all(a > 0 for a in self.coeffs))

    def level(self, x: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(self.coeffs, x))

    def admits(self, x: Point) -> bool:
        return self.level(x) < self.target

    @property
    def overshoots(self) -> bool:
        return any(abs(a) >= 2 for a in self.coeffs)

    def to_json(self) -> dict:
        return {"type": "linear", "coeffs": list(self.coeffs), "target": self.target,
                "horizon": self.horizon}


def enumerate_slice(region: Region, n: int) -> RegionSlice:
    """Accessible, boundary and inaccessible points of order ``n``."""
    region.check_horizon(n)
    acc, bnd = region.layer(n)
    inacc = tuple(x for x in simplex_points(n, region.k) if x not in acc)
    return RegionSlice(n, tuple(sorted(acc)), tuple(sorted(bnd)), inacc)


def boundary_points(region: Region, horizon: int) -> list[Point]:
    """Union of ``B_n`` for ``n <= horizon``, by order then lexicographically."""
    region.check_horizon(horizon)
    out = []
    for n in range(horizon + 1):
        out.extend(sorted(region.layer(n)[1]))
    return out


@dataclass(frozen=True)
class ValidationReport:
    k: int
    horizon: int
    finite: bool
    pruned: tuple[Point, ...]
    checked_up_to: int
    warnings: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "valid": True, "k": self.k, "horizon": self.horizon, "finite": self.finite,
            "pruned_count": len(self.pruned), "pruned": [list(x) for x in self.pruned],
            "checked_up_to": self.checked_up_to, "warnings": list(self.warnings),
        }


def validate_region(region: Region, check_horizon: int = 16) -> ValidationReport:
    """Sanity checks; raises on fatal problems and reports pruned points.

    For explicit regions every declared point is checked. For rule regions the
    rule is evaluated on all lattice points up to ``min(horizon, check_horizon)``.
    """
    if isinstance(region, ExplicitRegion) and not region.points:
        raise EmptyRegion("explicit region has no accessible points")
    if region.k < 2:
        raise DegenerateCategoryCount(f"k = {region.k}; at least 2 categories are needed")
    if not region.admits((0,) * region.k):
        raise OriginNotAccessible("the origin is not accessible")
    warnings = []
    if isinstance(region, ExplicitRegion):
        limit = region.horizon
        candidates = sorted(region.points, key=lambda x: (order(x), x))
    else:
        limit = min(region.horizon, check_horizon)
        candidates = [x for n in range(limit + 1) for x in simplex_points(n, region.k)
                      if region.admits(x)]
        if limit < region.horizon:
            warnings.append(f"pruning checked only up to order {limit}")
    pruned = tuple(x for x in candidates if x not in region.layer(order(x))[0])
    if isinstance(region, LinearRegion):
        if region.overshoots:
            warnings.append("coefficients with |a_i| >= 2: boundary includes overshoot points")
        if region.horizon < 1:
            warnings.append("horizon < 1: nothing beyond the origin is enumerated")
    return ValidationReport(region.k, region.horizon, region.finite, pruned, limit,
                            tuple(warnings))
