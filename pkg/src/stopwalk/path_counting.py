"""Exact path counts ``k(x)`` and first-step counts ``k*_i(x)`` over a region."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotOnBoundary
from .lattice import OutcomeModel, Point, Region, order, successors


@dataclass(frozen=True)
class PathCountTable:
    """Counts per point: ``counts[x] = (k(x), (k*_1(x), ..., k*_k(x)))``.

    ``boundary`` lists the boundary points with order <= horizon and
    ``frontier`` the accessible points of order ``horizon``.
    """

    region: Region
    horizon: int
    counts: dict
    boundary: tuple[Point, ...]
    frontier: tuple[Point, ...]

    @property
    def k(self) -> int:
        return self.region.k

    def total(self, x: Sequence[int]) -> int:
        return self.counts[tuple(x)][0]

    def from_unit(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.counts[tuple(x)][1]

    def is_boundary(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return order(x) <= self.horizon and self.region.is_boundary(x)


def count_paths(region: Region, horizon: int, retain_all: bool = True) -> PathCountTable:
    """Forward DP over orders.

    Boundary points receive counts but never pass them on. With
    ``retain_all=False`` only boundary points and the final frontier are kept.
    """
    region.check_horizon(horizon)
    k = region.k
    origin = (0,) * k
    zero = (0,) * k
    counts = {origin: (1, zero)}
    layer = {origin: (1, zero)}
    boundary = []
    for n in range(1, horizon + 1):
        acc, bnd = region.layer(n)
        nxt = {}
        for x, (tot, star) in layer.items():
            for i, y in enumerate(successors(x)):
                if n == 1:
                    add = (1, tuple(1 if j == i else 0 for j in range(k)))
                else:
                    add = (tot, star)
                if y in nxt:
                    t0, s0 = nxt[y]
                    nxt[y] = (t0 + add[0], tuple(a + b for a, b in zip(s0, add[1])))
                else:
                    nxt[y] = add
        layer = {}
        for y, v in nxt.items():
            if y in acc:
                layer[y] = v
            else:
                assert y in bnd
                boundary.append(y)
            if retain_all or y in bnd:
                counts[y] = v
        if not retain_all:
            counts.update(layer)
    if not retain_all and horizon > 0:
        counts.pop(origin, None)
    boundary.sort(key=lambda y: (order(y), y))
    return PathCountTable(region, horizon, counts, tuple(boundary), tuple(sorted(layer)))


def point_probability(count: int, x: Sequence[int], model: OutcomeModel):
    """``count * prod p_i^x_i``; exact for exact models, log-space floats otherwise."""
    if model.exact:
        prob = Fraction(count)
        for pi, xi in zip(model.p, x):
            prob *= pi ** xi
        return prob
    if count == 0:
        return 0.0
    log = math.log(count)
    for pi, xi in zip(model.p, x):
        if xi:
            if pi == 0:
                return 0.0
            log += xi * math.log(pi)
    return math.exp(log)


def first_passage_pmf(table: PathCountTable, model: OutcomeModel) -> dict:
    """Probability that the first boundary hit is ``y``, for every tabulated ``y``."""
    if model.k != table.k:
        raise DimensionMismatch(f"model has k={model.k}, table has k={table.k}")
    return {y: point_probability(table.total(y), y, model) for y in table.boundary}


def mass_balance(table: PathCountTable, model: OutcomeModel):
    """(absorbed mass up to the horizon, mass still on the frontier)."""
    pmf = first_passage_pmf(table, model)
    zero = Fraction(0) if model.exact else 0.0
    absorbed = sum(pmf.values(), zero)
    frontier = sum((point_probability(table.total(x), x, model) for x in table.frontier), zero)
    return absorbed, frontier


def multinomial(n: int, parts: Sequence[int]) -> int:
    if any(c < 0 for c in parts) or sum(parts) != n:
        return 0
    out, left = 1, n
    for c in parts:
        out *= math.comb(left, c)
        left -= c
    return out


def cycle_count_first_passage(b: int, y: Sequence[int], up: int, down: int) -> int:
    """Closed-form count of first-passage paths to level ``b`` ending at ``y``.

    Applies to walks whose level moves +1 on category ``up``, -1 on ``down``
    and 0 otherwise: ``(b / N) * N! / prod(y_i!)``.
    """
    y = tuple(y)
    if b < 1 or y[up] - y[down] != b:
        raise NotOnBoundary(f"{y} is not on level {b}")
    N = order(y)
    total = b * multinomial(N, y)
    assert total % N == 0
    return total // N
