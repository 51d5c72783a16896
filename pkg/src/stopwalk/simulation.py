"""Seeded Monte Carlo of boundary-stopped walks and Table-style summaries.

Each path ``i`` draws from its own Philox stream keyed by
``SeedSequence(seed, spawn_key=(i,))``, consuming uniforms in fixed chunks of
``CHUNK``. A path's outcome therefore depends only on ``(seed, i)``, never on
how paths are distributed across worker processes.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyInput, TooManyNonAbsorbed
from .estimation import CLOSED_FORM_COEFFS, CLOSED_FORMS, unbiased_estimate
from .lattice import LinearRegion, OutcomeModel, Region
from .path_counting import count_paths

CHUNK = 256
DEFAULT_MAX_STEPS = 10**6
THREADS_ENV = "STOPWALK_THREADS"


@dataclass(frozen=True)
class NonAbsorbed:
    steps: int


def path_stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def _categories(model_cdf, rng, k):
    u = rng.random(CHUNK)
    return np.minimum(np.searchsorted(model_cdf, u, side="right"), k - 1)


def sample_path(model: OutcomeModel, region: Region, rng: np.random.Generator,
                max_steps: int = DEFAULT_MAX_STEPS):
    """Counts at the first boundary hit, or :class:`NonAbsorbed` after ``max_steps``.

    Outcomes are drawn by inverse CDF on uniform variates.
    """
    if model.k != region.k:
        raise DimensionMismatch(f"model has k={model.k}, region has k={region.k}")
    k = model.k
    cdf = np.cumsum(np.asarray(model.p, dtype=float))
    counts = np.zeros(k, dtype=np.int64)
    steps = 0
    if isinstance(region, LinearRegion):
        coeffs = np.asarray(region.coeffs, dtype=np.int64)
        level = 0
        while steps < max_steps:
            cats = _categories(cdf, rng, k)[: max_steps - steps]
            levels = level + np.cumsum(coeffs[cats])
            hit = np.flatnonzero(levels >= region.target)
            if hit.size:
                stop = hit[0] + 1
                counts += np.bincount(cats[:stop], minlength=k)
                return tuple(int(c) for c in counts)
            counts += np.bincount(cats, minlength=k)
            level = int(levels[-1])
            steps += cats.size
        return NonAbsorbed(steps)
    x = [0] * k
    while steps < max_steps:
        for c in _categories(cdf, rng, k):
            x[c] += 1
            steps += 1
            if not region.admits(tuple(x)):
                return tuple(x)
            if steps >= max_steps:
                break
    return NonAbsorbed(steps)


def _simulate_range(args):
    model, region, seed, start, stop, max_steps = args
    out = []
    for i in range(start, stop):
        res = sample_path(model, region, path_stream(seed, i), max_steps)
        out.append(None if isinstance(res, NonAbsorbed) else res)
    return out


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def simulate_paths(model, region, paths, seed, max_steps=DEFAULT_MAX_STEPS, workers=None):
    """Stop points of paths ``0..paths-1`` in index order (``None`` if not absorbed)."""
    workers = worker_count() if workers is None else max(1, workers)
    if workers == 1 or paths < 2 * workers:
        return _simulate_range((model, region, seed, 0, paths, max_steps))
    bounds = np.linspace(0, paths, workers + 1).astype(int)
    jobs = [(model, region, seed, int(a), int(b), max_steps) for a, b in zip(bounds, bounds[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_simulate_range, jobs))
    return [obs for part in parts for obs in part]


@dataclass(frozen=True)
class Stats:
    mean: float
    sd: float
    mse: float


def summarize(estimates, true_value: float) -> Stats:
    """Mean, sample sd (divisor n-1) and mean squared error about ``true_value``."""
    values = [float(v) for v in estimates]
    n = len(values)
    if n == 0:
        raise EmptyInput("no estimates to summarize")
    mean = math.fsum(values) / n
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1)) if n > 1 else 0.0
    mse = math.fsum((v - true_value) ** 2 for v in values) / n
    return Stats(mean, sd, mse)


@dataclass(frozen=True)
class StudyConfig:
    model: OutcomeModel
    region: Region
    paths: int
    seed: int
    estimator: str = "auto"  # auto | general | lattice2d | nullstep
    max_steps: int = DEFAULT_MAX_STEPS
    max_nonabsorbed: float = 0.001
    workers: int | None = None

    def __post_init__(self):
        if self.paths < 1 or self.max_steps < 1:
            raise ValueError("paths and max_steps must be >= 1")
        if self.model.k != self.region.k:
            raise DimensionMismatch(f"model has k={self.model.k}, region has k={self.region.k}")

    def resolved_estimator(self) -> str:
        if self.estimator == "general":
            return "general"
        for name, coeffs in CLOSED_FORM_COEFFS.items():
            if isinstance(self.region, LinearRegion) and self.region.coeffs == coeffs:
                if self.estimator in ("auto", name):
                    return name
        if self.estimator == "auto":
            return "general"
        raise ValueError(f"closed form {self.estimator!r} does not match the region")


@dataclass(frozen=True)
class SimulationSummary:
    stats: dict  # (family, category) -> Stats
    n_absorbed: int
    n_failed: int
    seed: int
    estimator: str
    observations: list = field(default_factory=list, repr=False)
    estimates: dict = field(default_factory=dict, repr=False)


def per_path_estimates(config: StudyConfig, observations):
    """Float estimate vectors (``ml``, ``unbiased``) for every absorbed observation."""
    name = config.resolved_estimator()
    absorbed = [y for y in observations if y is not None]
    ml = [tuple(c / sum(y) for c in y) for y in absorbed]
    if name == "general":
        horizon = max(sum(y) for y in absorbed)
        table = count_paths(config.region, horizon)
        unb = [tuple(float(v) for v in unbiased_estimate(table, y)) for y in absorbed]
    else:
        form = CLOSED_FORMS[name]
        b = config.region.target
        unb = [tuple(float(v) for v in form(y, b)) for y in absorbed]
    return {"ml": ml, "unbiased": unb}


def run_study(config: StudyConfig) -> SimulationSummary:
    obs = simulate_paths(config.model, config.region, config.paths, config.seed,
                         config.max_steps, config.workers)
    failed = sum(1 for y in obs if y is None)
    if failed > config.max_nonabsorbed * config.paths:
        raise TooManyNonAbsorbed(
            f"{failed} of {config.paths} paths not absorbed within {config.max_steps} steps")
    if failed == len(obs):
        raise EmptyInput("no path was absorbed")
    est = per_path_estimates(config, obs)
    p = [float(v) for v in config.model.p]
    stats = {}
    for family, vectors in est.items():
        for i in range(config.model.k):
            stats[(family, i)] = summarize([v[i] for v in vectors], p[i])
    return SimulationSummary(stats, len(obs) - failed, failed, config.seed,
                             config.resolved_estimator(), obs, est)
