"""Independent brute-force references used by the test suite.

Nothing here imports the code under test's algorithms.
"""
import itertools
import math
from collections import defaultdict
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def warping_paths(n, m):
    """Every monotone, continuous path from (1, 1) to (n, m)."""
    out = []

    def walk(path):
        i, j = path[-1]
        if (i, j) == (n, m):
            out.append(tuple(path))
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            if i + di <= n and j + dj <= m:
                path.append((i + di, j + dj))
                walk(path)
                path.pop()

    walk([(1, 1)])
    return tuple(out)


def brute_dtw(x, y):
    return min(sum(abs(x[i - 1] - y[j - 1]) for i, j in p) for p in warping_paths(len(x), len(y)))


def path_incidence(n, m):
    """(n_paths, n*m) 0/1 matrix; row r marks the cells visited by path r."""
    paths = warping_paths(n, m)
    P = np.zeros((len(paths), n * m), dtype=np.float32)
    for r, p in enumerate(paths):
        for i, j in p:
            P[r, (i - 1) * m + (j - 1)] = 1
    return P


def brute_dtw_all(xs, ys, chunk=8192):
    """Brute-force DTW for every pair in ``xs`` x ``ys`` (equal-length groups).

    Evaluates every warping path as a matrix product of the pairwise cost
    matrices with the path incidence matrix; integer inputs stay exact.
    """
    xs = np.asarray(xs, dtype=np.float32)
    ys = np.asarray(ys, dtype=np.float32)
    n, m = xs.shape[1], ys.shape[1]
    P = path_incidence(n, m).T
    out = np.empty((len(xs), len(ys)))
    for a in range(0, len(xs), max(1, chunk // len(ys))):
        xb = xs[a : a + max(1, chunk // len(ys))]
        C = np.abs(xb[:, None, :, None] - ys[None, :, None, :]).reshape(len(xb) * len(ys), n * m)
        out[a : a + len(xb)] = (C @ P).min(axis=1).reshape(len(xb), len(ys))
    return out


def group_mean(records, kind):
    """{(label, (year, month)): mean weight}."""
    acc = defaultdict(list)
    for r in records:
        acc[(getattr(r, kind), (r.date.year, r.date.month))].append(r.weight)
    return {k: sum(v) / len(v) for k, v in acc.items()}


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def textbook_modularity(A, membership):
    """Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)."""
    A = np.asarray(A, dtype=float)
    k = A.sum(axis=1)
    two_m = k.sum()
    q = 0.0
    for i in range(len(A)):
        for j in range(len(A)):
            if membership[i] == membership[j]:
                q += A[i, j] - k[i] * k[j] / two_m
    return q / two_m


def best_modularity(A):
    """Maximum modularity over every partition of the nodes."""
    n = len(A)
    best, arg = -math.inf, None
    for part in set_partitions(range(n)):
        memb = [0] * n
        for c, block in enumerate(part):
            for v in block:
                memb[v] = c
        q = textbook_modularity(A, memb)
        if q > best + 1e-12:
            best, arg = q, memb
    return best, arg


def triangle_clustering(A, i):
    A = np.asarray(A)
    nb = [j for j in range(len(A)) if A[i, j]]
    if len(nb) < 2:
        return 0.0
    links = sum(1 for a, b in itertools.combinations(nb, 2) if A[a, b])
    return links / (len(nb) * (len(nb) - 1) / 2)


def permutation_pvalue(x, y, n_perm, rng):
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    r0 = abs(np.corrcoef(x, y)[0, 1])
    perms = np.array([rng.permutation(y) for _ in range(n_perm)])
    yc = perms - perms.mean(axis=1, keepdims=True)
    xc = x - x.mean()
    r = np.abs(yc @ xc / (np.linalg.norm(yc, axis=1) * np.linalg.norm(xc)))
    return (np.sum(r >= r0 - 1e-12) + 1) / (n_perm + 1)
