"""Pure-Python DTW kernels, used when the compiled extension is unavailable."""
import math

import numpy as np


def _min3(a, b, c):
    m = a
    if b < m:
        m = b
    if c < m:
        m = c
    return m


def _cost(x, y):
    m = len(y)
    inf = math.inf
    prev = [0.0] + [inf] * m
    for xi in x:
        curr = [inf] * (m + 1)
        for j in range(1, m + 1):
            curr[j] = abs(xi - y[j - 1]) + _min3(prev[j - 1], prev[j], curr[j - 1])
        prev = curr
    return prev[m]


def dtw_cost(x, y):
    return _cost([float(v) for v in x], [float(v) for v in y])


def dtw_table(x, y):
    """Full (n+1) x (m+1) cumulative-cost table with infinite borders."""
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n, m = len(x), len(y)
    t = [[math.inf] * (m + 1) for _ in range(n + 1)]
    t[0][0] = 0.0
    for i in range(1, n + 1):
        row, up = t[i], t[i - 1]
        for j in range(1, m + 1):
            row[j] = abs(x[i - 1] - y[j - 1]) + _min3(up[j - 1], up[j], row[j - 1])
    return np.array(t)


def dtw_pairwise(X):
    """Symmetric matrix of DTW costs between the rows of ``X``."""
    rows = [[float(v) for v in r] for r in np.asarray(X)]
    k = len(rows)
    out = np.zeros((k, k))
    for a in range(k):
        for b in range(a + 1, k):
            d = _cost(rows[a], rows[b])
            out[a, b] = out[b, a] = d
    return out
