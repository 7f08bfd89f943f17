"""Turn distance matrices (or the series behind them) into networks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .distance import DistanceMatrix
from .errors import InputError
from .tseries import SeriesSet

Edge = tuple[int, int]


@dataclass(frozen=True)
class Network:
    """Undirected simple graph over labelled, kind-tagged nodes.

    Edges are stored as index pairs ``(i, j)`` with ``i < j``. ``weights`` is
    ``None`` for unweighted networks.
    """

    labels: tuple[str, ...]
    kinds: tuple[str, ...]
    edges: frozenset[Edge]
    weights: Optional[Mapping[Edge, float]] = field(default=None, compare=False)

    def __post_init__(self):
        labels, kinds = tuple(self.labels), tuple(self.kinds)
        n = len(labels)
        if len(kinds) != n:
            raise InputError("labels and kinds differ in length")
        if len(set(labels)) != n:
            raise InputError("node labels must be unique")
        edges = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"self-loop on node {labels[u]!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) references a missing node")
            edges.add((min(u, v), max(u, v)))
        weights = None
        if self.weights is not None:
            weights = {}
            for (u, v), w in self.weights.items():
                e = (min(u, v), max(u, v))
                if e not in edges:
                    raise InputError(f"weight given for absent edge {e}")
                if not 0 < w <= 1:
                    raise InputError(f"edge weight {w} outside (0, 1]")
                weights[e] = float(w)
            if set(weights) != edges:
                raise InputError("weighted network needs a weight for every edge")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_label_edges(
        cls,
        labels: Iterable[str],
        kinds: Iterable[str],
        edges: Iterable[tuple[str, str]],
        weights: Optional[Mapping[tuple[str, str], float]] = None,
    ) -> "Network":
        labels = tuple(labels)
        pos = {lab: i for i, lab in enumerate(labels)}
        try:
            idx = {(pos[a], pos[b]): (a, b) for a, b in edges}
        except KeyError as exc:
            raise InputError(f"edge references unknown node {exc.args[0]!r}") from None
        w = None
        if weights is not None:
            w = {e: weights[ab] for e, ab in idx.items()}
        return cls(labels, tuple(kinds), frozenset(idx), w)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def index(self, node) -> int:
        """Node index for a label (or a valid index)."""
        if isinstance(node, (int, np.integer)) and not isinstance(node, bool):
            if 0 <= node < self.n:
                return int(node)
        else:
            try:
                return self.labels.index(node)
            except ValueError:
                pass
        raise InputError(f"unknown node {node!r}")

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def neighbors(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def label_edges(self) -> frozenset[tuple[str, str]]:
        """Edges as label pairs, each pair sorted lexicographically."""
        return frozenset(
            tuple(sorted((self.labels[u], self.labels[v]))) for u, v in self.edges
        )

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def knn_network(D: DistanceMatrix, k: int) -> Network:
    """Link each node to its ``k`` nearest nodes; symmetrize by union.

    Equal distances are broken by ascending node index.
    """
    n = len(D)
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= n - 1):
        raise InputError(f"k must be an integer in [1, {n - 1}], got {k!r}")
    edges = set()
    for i in range(n):
        row = D.values[i].copy()
        order = [j for j in np.argsort(row, kind="stable") if j != i]
        for j in order[:k]:
            edges.add((min(i, j), max(i, j)))
    return Network(D.labels, D.kinds, frozenset(edges))


def _require_normalized(D: DistanceMatrix, what: str):
    if not D.is_normalized():
        raise InputError(
            f"{what} needs a distance matrix normalized to [0, 1] "
            f"(max entry {D.max_offdiag():.6g}); use normalize_matrix first"
        )


def eps_network(D: DistanceMatrix, eps: float) -> Network:
    """Link every pair whose normalized distance is strictly below ``eps``."""
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps!r}")
    _require_normalized(D, "eps_network")
    iu, ju = np.triu_indices(len(D), k=1)
    mask = D.values[iu, ju] < eps
    return Network(D.labels, D.kinds, frozenset(zip(iu[mask].tolist(), ju[mask].tolist())))


def weighted_network(D: DistanceMatrix) -> Network:
    """Complete graph weighted by ``1 - D``; zero-weight pairs are left out."""
    _require_normalized(D, "weighted_network")
    iu, ju = np.triu_indices(len(D), k=1)
    w = 1.0 - D.values[iu, ju]
    keep = w > 0
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    return Network(D.labels, D.kinds, frozenset(edges), dict(zip(edges, w[keep].tolist())))


# |r| = 1 would give an infinite z score
R_CLAMP = 1.0 - 1e-12


def correlation_pvalue(r: float, T: int) -> float:
    """Two-sided p-value of a Pearson correlation via Fisher's z-transformation."""
    if T < 4:
        raise InputError(f"significance test needs at least 4 points, got {T}")
    r = max(-R_CLAMP, min(R_CLAMP, float(r)))
    z = math.atanh(r) * math.sqrt(T - 3)
    return math.erfc(abs(z) / math.sqrt(2.0))


def pearson_matrix(X: np.ndarray) -> np.ndarray:
    """Row-wise Pearson correlations; rows with zero variance correlate 0."""
    X = np.asarray(X, dtype=float)
    Xc = X - X.mean(axis=1, keepdims=True)
    norms = np.sqrt((Xc**2).sum(axis=1))
    ok = norms > 0
    Z = np.zeros_like(Xc)
    Z[ok] = Xc[ok] / norms[ok, None]
    R = Z @ Z.T
    return np.clip(R, -1.0, 1.0)


def significant_links_network(
    set_: SeriesSet, alpha: float = 0.05, bonferroni: bool = False
) -> Network:
    """Link pairs whose Pearson correlation is significant at level ``alpha``."""
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie in (0, 1), got {alpha!r}")
    X = set_.matrix()
    T = set_.length
    if T < 4:
        raise InputError(f"significance test needs series of length >= 4, got {T}")
    if not np.isfinite(X).all():
        raise InputError("series contain missing or non-finite values")
    n = len(set_)
    level = alpha / (n * (n - 1) / 2) if bonferroni and n > 1 else alpha
    R = pearson_matrix(X)
    flat = np.ptp(X, axis=1) == 0
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if flat[i] or flat[j]:
                continue
            if correlation_pvalue(R[i, j], T) < level:
                edges.add((i, j))
    return Network(set_.labels, set_.kinds, frozenset(edges))
