"""Dynamic time warping and pairwise distance matrices.

The cumulative-cost kernels come from the compiled ``_dtw_core`` extension
when it is importable, otherwise from the pure-Python ``_dtw_py``. Setting
``TSNET_PURE_PYTHON=1`` forces the fallback. Both produce identical floats.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .tseries import SeriesSet

if os.environ.get("TSNET_PURE_PYTHON"):
    from . import _dtw_py as _kernels

    BACKEND = "python"
else:
    try:
        from . import _dtw_core as _kernels

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _dtw_py as _kernels

        BACKEND = "python"


def _as_sequence(x, name: str) -> np.ndarray:
    a = np.ascontiguousarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise InputError(f"{name} must be one-dimensional")
    if a.size == 0:
        raise InputError(f"{name} is empty")
    if not np.isfinite(a).all():
        raise InputError(f"{name} contains non-finite values")
    return a


def dtw(x, y) -> float:
    """DTW distance with absolute-difference step cost and no window."""
    return float(_kernels.dtw_cost(_as_sequence(x, "x"), _as_sequence(y, "y")))


@dataclass(frozen=True)
class WarpingPath:
    """Alignment as 1-based ``(i, j)`` index pairs from (1, 1) to (len(x), len(y))."""

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        steps = tuple((int(i), int(j)) for i, j in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps or steps[0] != (1, 1):
            raise InputError("warping path must start at (1, 1)")
        for (i0, j0), (i1, j1) in zip(steps, steps[1:]):
            if (i1 - i0, j1 - j0) not in ((1, 0), (0, 1), (1, 1)):
                raise InputError(f"non-continuous warping step {(i0, j0)} -> {(i1, j1)}")

    def __len__(self):
        return len(self.steps)

    def cost(self, x, y) -> float:
        return float(sum(abs(x[i - 1] - y[j - 1]) for i, j in self.steps))


def dtw_path(x, y) -> tuple[float, WarpingPath]:
    """DTW distance together with an optimal warping path.

    Backtracking prefers the diagonal predecessor on ties, then ``(i-1, j)``.
    """
    x = _as_sequence(x, "x")
    y = _as_sequence(y, "y")
    t = _kernels.dtw_table(x, y)
    i, j = len(x), len(y)
    steps = [(i, j)]
    while (i, j) != (1, 1):
        candidates = ((i - 1, j - 1), (i - 1, j), (i, j - 1))
        i, j = min(candidates, key=lambda c: t[c])
        steps.append((i, j))
    steps.reverse()
    return float(t[-1, -1]), WarpingPath(tuple(steps))


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    kinds: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        n = len(self.labels)
        if v.shape != (n, n) or len(self.kinds) != n:
            raise InputError(f"distance matrix shape {v.shape} does not match {n} labels")
        if not np.isfinite(v).all() or (v < 0).any():
            raise InputError("distance matrix entries must be finite and non-negative")
        if not np.array_equal(v, v.T):
            raise InputError("distance matrix is not symmetric")
        if (np.diag(v) != 0).any():
            raise InputError("distance matrix diagonal must be zero")
        v.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.labels)

    def max_offdiag(self) -> float:
        if len(self) < 2:
            return 0.0
        return float(self.values[~np.eye(len(self), dtype=bool)].max())

    def is_normalized(self) -> bool:
        return self.max_offdiag() <= 1.0


def distance_matrix(set_: SeriesSet) -> DistanceMatrix:
    """Pairwise DTW distances between the members of ``set_``."""
    if len(set_) < 2:
        raise InputError("distance matrix needs at least two series")
    X = np.ascontiguousarray(set_.matrix(), dtype=np.float64)
    if not np.isfinite(X).all():
        raise InputError("series contain missing or non-finite values")
    return DistanceMatrix(set_.labels, set_.kinds, _kernels.dtw_pairwise(X))


def normalize_matrix(D: DistanceMatrix) -> DistanceMatrix:
    """Divide by the largest off-diagonal entry, giving values in [0, 1]."""
    peak = D.max_offdiag()
    if not peak > 0:
        raise InputError("cannot normalize an all-zero distance matrix")
    return DistanceMatrix(D.labels, D.kinds, D.values / peak)

