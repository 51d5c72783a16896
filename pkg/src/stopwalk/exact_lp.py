"""Exact rational feasibility for ``A x = b, x >= 0`` (phase-one simplex).

Pivoting uses Dantzig's rule and switches to Bland's rule after a run of
degenerate pivots, which rules out cycling.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

MAX_DEGENERATE_RUN = 50


def solve_feasibility(A: Sequence[Sequence], b: Sequence):
    """Return ``(x, None)`` with ``A x = b, x >= 0`` or ``(None, z)``.

    In the infeasible case ``z`` is a Farkas certificate: ``z^T A >= 0``
    componentwise and ``z^T b < 0``. All arithmetic is in ``Fraction``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    # tableau rows: [A' | I | b'] with A' = S A, b' = S b >= 0
    T = []
    for i in range(m):
        row = [sign[i] * Fraction(a) for a in A[i]]
        row += [Fraction(1 if j == i else 0) for j in range(m)]
        row.append(sign[i] * Fraction(b[i]))
        T.append(row)
    width = n + m + 1
    # reduced costs for min sum(artificials); last entry is -objective
    d = [Fraction(0)] * width
    for j in range(width):
        if n <= j < n + m:
            continue
        d[j] = -sum((T[i][j] for i in range(m)), Fraction(0))
    basis = [n + i for i in range(m)]
    degenerate_run = 0

    while True:
        if degenerate_run < MAX_DEGENERATE_RUN:
            entering = min(range(n + m), key=d.__getitem__)
            if d[entering] >= 0:
                entering = None
        else:
            entering = next((j for j in range(n + m) if d[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen for a phase-one problem bounded below by 0
            raise ArithmeticError("phase-one objective unbounded")
        r = best[1]
        degenerate_run = degenerate_run + 1 if best[0][0] == 0 else 0
        piv = T[r][entering]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [vi - f * vr for vi, vr in zip(T[i], T[r])]
        f = d[entering]
        d = [vd - f * vr for vd, vr in zip(d, T[r])]
        basis[r] = entering

    objective = -d[-1]
    if objective == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = T[i][-1]
        return x, None
    # duals of the sign-flipped system: y_i = 1 - reduced cost of artificial i
    y = [1 - d[n + i] for i in range(m)]
    z = [-sign[i] * y[i] for i in range(m)]
    return None, z
