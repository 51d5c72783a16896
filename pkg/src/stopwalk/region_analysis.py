"""Checks of the two region hypotheses: closedness and simplicity.

Simplicity is decided slice by slice with exact convex-hull membership; a
point outside the hull comes with an integer separating hyperplane that can be
re-verified by substitution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, EmptyGenerators, MixedOrder
from .exact_lp import solve_feasibility
from .lattice import LinearRegion, OutcomeModel, Point, Region, enumerate_slice, order

DEFAULT_THRESHOLD = 0.05


@dataclass(frozen=True)
class SeparationCertificate:
    """``coeffs . query == offset`` and ``coeffs . g >= offset + margin`` on generators.

    Coefficients are natural numbers with at least one zero, obtained from the
    rational separator by clearing denominators and adding multiples of the
    slice equation ``sum(x) == n``.
    """

    coeffs: tuple[int, ...]
    offset: int
    margin: int

    def value(self, x: Sequence[int]) -> int:
        return sum(m * c for m, c in zip(self.coeffs, x))

    def verify(self, generators: Sequence[Sequence[int]], query: Sequence[int]) -> bool:
        if self.margin <= 0 or self.value(query) != self.offset:
            return False
        return all(self.value(g) >= self.offset + self.margin for g in generators)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "offset": self.offset, "margin": self.margin}


@dataclass(frozen=True)
class Contained:
    """Convex weights (one per generator) expressing the query point."""

    weights: tuple[Fraction, ...]

    def verify(self, generators, query) -> bool:
        if any(w < 0 for w in self.weights) or sum(self.weights) != 1:
            return False
        k = len(query)
        combo = [sum((w * g[j] for w, g in zip(self.weights, generators)), Fraction(0))
                 for j in range(k)]
        return combo == [Fraction(q) for q in query]


@dataclass(frozen=True)
class Separated:
    certificate: SeparationCertificate


def _normalize(u: Sequence[Fraction], query: Point, generators) -> SeparationCertificate:
    den = math.lcm(*(f.denominator for f in u))
    m = [int(f * den) for f in u]
    shift = min(m)
    m = [c - shift for c in m]
    g = math.gcd(*m)
    m = [c // g for c in m]
    offset = sum(c * q for c, q in zip(m, query))
    margin = min(sum(c * x for c, x in zip(m, gen)) for gen in generators) - offset
    return SeparationCertificate(tuple(m), offset, margin)


def hull_contains(generators: Sequence[Sequence[int]], query: Sequence[int]):
    """Exact test of ``query in conv(generators)`` for points of one common order."""
    gens = [tuple(g) for g in generators]
    query = tuple(query)
    if not gens:
        raise EmptyGenerators("no generators")
    k = len(query)
    n = order(query)
    if any(len(g) != k for g in gens):
        raise MixedOrder("points of different dimension")
    if any(order(g) != n for g in gens):
        raise MixedOrder("generators and query must share the same order")
    A = [[g[j] for g in gens] for j in range(k)] + [[1] * len(gens)]
    rhs = list(query) + [1]
    x, z = solve_feasibility(A, rhs)
    if x is not None:
        return Contained(tuple(x))
    cert = _normalize(z[:k], query, gens)
    assert cert.verify(gens, query), "separator failed re-verification"
    return Separated(cert)


@dataclass(frozen=True)
class SimplicityReport:
    horizon: int
    finite: bool
    violations: tuple[tuple[int, Point, Contained], ...]
    certificates: tuple[tuple[int, Point, SeparationCertificate], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "result": "PASS" if self.passed else "FAIL",
            "horizon": self.horizon,
            "horizon_limited": not self.finite,
            "violations": [
                {"order": n, "point": list(x), "weights": [str(w) for w in c.weights]}
                for n, x, c in self.violations
            ],
            "certificates": [
                {"order": n, "point": list(x), **c.to_json()} for n, x, c in self.certificates
            ],
        }


def is_simple(region: Region, horizon: int) -> SimplicityReport:
    """Test every inaccessible point of order ``n <= horizon`` against ``conv(R_n)``."""
    region.check_horizon(horizon)
    violations, certs = [], []
    for n in range(horizon + 1):
        sl = enumerate_slice(region, n)
        if not sl.accessible:
            continue
        for y in sl.inaccessible:
            res = hull_contains(sl.accessible, y)
            if isinstance(res, Contained):
                violations.append((n, y, res))
            else:
                certs.append((n, y, res.certificate))
    return SimplicityReport(horizon, region.finite, tuple(violations), tuple(certs))


@dataclass(frozen=True)
class ClosednessReport:
    absorbed_mass: Fraction | float
    residual_mass: Fraction | float
    horizon: int
    verdict: str
    threshold: float

    def to_json(self) -> dict:
        def fmt(v):
            return str(v) if isinstance(v, Fraction) else repr(float(v))
        return {"absorbed_mass": fmt(self.absorbed_mass), "residual_mass": fmt(self.residual_mass),
                "horizon": self.horizon, "verdict": self.verdict, "threshold": self.threshold}


def _propagate_linear(region: LinearRegion, p, horizon):
    zero = p[0] * 0
    levels = {0: zero + 1}
    absorbed = zero
    for _ in range(horizon):
        nxt = {}
        for lvl, mass in levels.items():
            for a, pi in zip(region.coeffs, p):
                if not pi:
                    continue
                new = lvl + a
                if new < region.target:
                    nxt[new] = nxt.get(new, zero) + mass * pi
                else:
                    absorbed += mass * pi
        levels = nxt
    residual = sum(levels.values(), zero)
    return absorbed, residual


def _propagate_points(region: Region, p, horizon):
    zero = p[0] * 0
    origin = (0,) * region.k
    mass = {origin: zero + 1}
    absorbed = zero
    for n in range(1, horizon + 1):
        acc = region.layer(n)[0]
        nxt = {}
        for x, mx in mass.items():
            for i, pi in enumerate(p):
                if not pi:
                    continue
                y = x[:i] + (x[i] + 1,) + x[i + 1:]
                if y in acc:
                    nxt[y] = nxt.get(y, zero) + mx * pi
                else:
                    absorbed += mx * pi
        mass = nxt
    return absorbed, sum(mass.values(), zero)


def is_closed(region: Region, model: OutcomeModel, horizon: int,
              threshold: float = DEFAULT_THRESHOLD) -> ClosednessReport:
    """Absorbed and residual probability mass after ``horizon`` steps."""
    if model.k != region.k:
        raise DimensionMismatch(f"model has k={model.k}, region has k={region.k}")
    region.check_horizon(horizon)
    if isinstance(region, LinearRegion):
        absorbed, residual = _propagate_linear(region, model.p, horizon)
    else:
        absorbed, residual = _propagate_points(region, model.p, horizon)
    if model.exact and residual == 0:
        verdict = "ClosedExact"
    elif residual < threshold:
        verdict = "ClosedNumerically"
    else:
        verdict = "Inconclusive"
    return ClosednessReport(absorbed, residual, horizon, verdict, threshold)
