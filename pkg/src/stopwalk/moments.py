"""Exact (truncated) moments of the estimators for the +1/0/-1 level walks.

Used as a simulation-free reference for Monte Carlo studies: the joint law of
(up-count, down-count, N) at absorption is propagated step by step and the
lateral counts are integrated out analytically (given the stop point they are
binomial among the non-vertical steps).
"""
from __future__ import annotations

import numpy as np

from .lattice import OutcomeModel


def exact_moments(model: OutcomeModel, b: int, max_order: int):
    """Mean and sd of both estimator families for a ``(1, 0, -1[, 0])`` walk.

    Category 0 moves the level up, category 2 down, the others are lateral.
    Returns ``(moments, absorbed)`` where ``moments[(family, i)] = (mean, sd)``
    conditional on absorption by ``max_order`` and ``absorbed`` is that
    probability.
    """
    p = np.asarray([float(v) for v in model.p])
    k = len(p)
    lateral = [i for i in range(k) if i not in (0, 2)]
    lat_total = p[lateral].sum()
    M = max_order
    cur = np.zeros((M + 2, M + 2))
    cur[0, 0] = 1.0
    x1 = np.arange(M + 2)[:, None]
    x3 = np.arange(M + 2)[None, :]
    acc = {key: [0.0, 0.0] for key in
           [(f, i) for f in ("ml", "unbiased") for i in range(k)]}
    absorbed = 0.0
    for n in range(1, M + 1):
        m = n + 1
        nxt = np.zeros_like(cur)
        nxt[1:m, :m] += p[0] * cur[:m - 1, :m]
        nxt[:m, 1:m] += p[2] * cur[:m, :m - 1]
        nxt[:m, :m] += lat_total * cur[:m, :m]
        hit = (x1[:m] - x3[:, :m]) == b
        w = nxt[:m, :m][hit]
        if w.size:
            up = np.broadcast_to(x1[:m], (m, m))[hit].astype(float)
            down = np.broadcast_to(x3[:, :m], (m, m))[hit].astype(float)
            rest = n - up - down
            absorbed += w.sum()
            for family in ("ml", "unbiased"):
                for i in range(k):
                    if family == "ml":
                        scale = 1.0 / n
                    elif n == 1:
                        scale = 1.0  # one-step hit: indicator of the up category
                    elif i == 0:
                        scale = (b - 1) / (b * (n - 1))
                    elif i == 2:
                        scale = (b + 1) / (b * (n - 1))
                    else:
                        scale = 1.0 / (n - 1)
                    if i == 0:
                        e1, e2 = up, up**2
                    elif i == 2:
                        e1, e2 = down, down**2
                    else:
                        q = p[i] / lat_total if lat_total else 0.0
                        e1 = rest * q
                        e2 = rest * q * (1 - q) + e1**2
                    acc[(family, i)][0] += float((w * scale * e1).sum())
                    acc[(family, i)][1] += float((w * scale**2 * e2).sum())
        nxt[:m, :m][(x1[:m] - x3[:, :m]) >= b] = 0.0
        cur = nxt
    out = {}
    for key, (s1, s2) in acc.items():
        mean = s1 / absorbed
        out[key] = (mean, float(np.sqrt(max(s2 / absorbed - mean**2, 0.0))))
    return out, absorbed
