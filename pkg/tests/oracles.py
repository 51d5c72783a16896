"""Independent brute-force oracles used by the tests."""
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, product


def enumerate_stopped_paths(admits, k, max_len):
    """Count first-exit sequences of length <= max_len by exhaustive enumeration.

    Returns {y: [total, per-first-category counts]} for stop points of order <= max_len.
    """
    out = defaultdict(lambda: [0, [0] * k])
    for length in range(1, max_len + 1):
        for seq in product(range(k), repeat=length):
            x = [0] * k
            stopped_at = None
            for t, c in enumerate(seq):
                x[c] += 1
                if not admits(tuple(x)):
                    stopped_at = t
                    break
            # count each stopped prefix exactly once: the one whose exit is the last step
            if stopped_at == length - 1:
                rec = out[tuple(x)]
                rec[0] += 1
                rec[1][seq[0]] += 1
    return dict(out)


def explicit_admits(points):
    pts = set(points)

    def admits(x):
        # reachability is implied by the sequential walk itself
        return x in pts
    return admits


def _solve(rows, rhs):
    """Exact Gaussian elimination; returns a solution or None (square or overdetermined)."""
    n = len(rows[0])
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols, r = [], 0
    for c in range(n):
        pr = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        M[r] = [v / M[r][c] for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in M):
        return None
    if len(piv_cols) < n:
        return None  # underdetermined: skip, a smaller subset covers it
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = M[i][-1]
    return sol


def brute_hull_contains(generators, query):
    """Caratheodory: try every subset of <= k generators for nonnegative barycentric weights."""
    k = len(query)
    gens = sorted(set(tuple(g) for g in generators))
    for size in range(1, min(k, len(gens)) + 1):
        for sub in combinations(gens, size):
            rows = [[g[j] for g in sub] for j in range(k)] + [[1] * size]
            sol = _solve(rows, list(query) + [1])
            if sol is not None and all(w >= 0 for w in sol):
                return True
    return False
