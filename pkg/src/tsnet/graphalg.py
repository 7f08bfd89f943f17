"""Structural metrics and random-walk community detection.

All metrics use the unweighted skeleton of a network.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import InputError
from .netbuild import Network

Assignment = Union[Sequence[int], Mapping[str, int]]


def degree(net: Network, node) -> int:
    i = net.index(node)
    return sum(1 for u, v in net.edges if u == i or v == i)


def degrees(net: Network) -> np.ndarray:
    d = np.zeros(net.n, dtype=np.int64)
    for u, v in net.edges:
        d[u] += 1
        d[v] += 1
    return d


def density(net: Network) -> float:
    if net.n < 2:
        raise InputError("density needs at least two nodes")
    return net.m / (net.n * (net.n - 1) / 2)


def local_clustering(net: Network, node) -> float:
    """Fraction of neighbour pairs that are linked; 0 below degree 2."""
    i = net.index(node)
    nb = net.neighbors()
    return _clustering(nb, i)


def _clustering(nb: list[set[int]], i: int) -> float:
    k = len(nb[i])
    if k < 2:
        return 0.0
    links = sum(len(nb[u] & nb[i]) for u in nb[i]) // 2
    return links / (k * (k - 1) / 2)


def local_clusterings(net: Network) -> np.ndarray:
    nb = net.neighbors()
    return np.array([_clustering(nb, i) for i in range(net.n)])


def _membership(net: Network, assignment: Assignment) -> list:
    if isinstance(assignment, Mapping):
        missing = [lab for lab in net.labels if lab not in assignment]
        if missing:
            raise InputError(f"assignment does not cover nodes {missing}")
        return [assignment[lab] for lab in net.labels]
    membership = list(assignment)
    if len(membership) != net.n:
        raise InputError(f"assignment covers {len(membership)} of {net.n} nodes")
    return membership


def modularity(net: Network, assignment: Assignment) -> float:
    """Newman modularity ``sum_c e_c/m - (d_c/2m)^2``."""
    if net.m == 0:
        raise InputError("modularity is undefined for a network without edges")
    comm = _membership(net, assignment)
    m = net.m
    intra: dict = {}
    deg: dict = {}
    for u, v in net.edges:
        deg[comm[u]] = deg.get(comm[u], 0) + 1
        deg[comm[v]] = deg.get(comm[v], 0) + 1
        if comm[u] == comm[v]:
            intra[comm[u]] = intra.get(comm[u], 0) + 1
    return sum(intra.get(c, 0) / m - (d / (2 * m)) ** 2 for c, d in deg.items())


@dataclass(frozen=True)
class Partition:
    """Community membership by node index, with the partition's modularity.

    ``modularity`` is ``None`` for networks without edges, where it is undefined.
    """

    labels: tuple[str, ...]
    membership: tuple[int, ...]
    modularity: Optional[float]

    @property
    def assignment(self) -> dict[str, int]:
        return dict(zip(self.labels, self.membership))

    @property
    def n_communities(self) -> int:
        return len(set(self.membership))

    def communities(self) -> list[list[str]]:
        groups: dict[int, list[str]] = {}
        for lab, c in zip(self.labels, self.membership):
            groups.setdefault(c, []).append(lab)
        return [groups[c] for c in sorted(groups)]


def _canonical(membership: Sequence[int]) -> tuple[int, ...]:
    """Relabel communities 0, 1, ... in order of first appearance."""
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(c, len(ids)) for c in membership)


def walktrap_merges(net: Network, walk_length: int = 4):
    """Agglomerative random-walk clustering (Pons and Latapy).

    Every node gets a self-loop, the walk runs ``walk_length`` steps, and at
    each step the pair of adjacent communities with the smallest increase in
    the squared walk distance is merged. Merging stops when no adjacent pair
    is left, so separate components never join.

    Returns the list of memberships, one per level, from singletons upwards.
    """
    n = net.n
    A = net.adjacency().astype(float) + np.eye(n)
    d = A.sum(axis=1)
    P = A / d[:, None]
    Pt = np.linalg.matrix_power(P, walk_length)
    inv_d = 1.0 / d

    # live communities: id -> (member list, mean walk vector)
    comms = {i: ([i], Pt[i].copy()) for i in range(n)}
    neighbors = {i: set() for i in range(n)}
    for u, v in net.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)

    def delta_sigma(a, b):
        ma, pa = comms[a]
        mb, pb = comms[b]
        sa, sb = len(ma), len(mb)
        diff = pa - pb
        return (sa * sb / (sa + sb)) * float(np.dot(diff * diff, inv_d)) / n

    dist = {}
    for u, v in net.edges:
        dist[(u, v)] = delta_sigma(u, v)

    membership = list(range(n))
    levels = [tuple(membership)]
    next_id = n
    while dist:
        (a, b), _ = min(dist.items(), key=lambda kv: (kv[1], kv[0]))
        ma, pa = comms.pop(a)
        mb, pb = comms.pop(b)
        c = next_id
        next_id += 1
        members = ma + mb
        comms[c] = (members, (len(ma) * pa + len(mb) * pb) / len(members))
        for x in members:
            membership[x] = c
        levels.append(tuple(membership))

        nb = (neighbors.pop(a) | neighbors.pop(b)) - {a, b}
        neighbors[c] = nb
        for x in nb:
            neighbors[x] -= {a, b}
            neighbors[x].add(c)
        dist = {e: s for e, s in dist.items() if a not in e and b not in e}
        for x in nb:
            dist[(x, c)] = delta_sigma(x, c)
    return [_canonical(m) for m in levels]


def detect_communities(net: Network, walk_length: int = 4) -> Partition:
    """Walktrap communities, cut at the level of maximum modularity.

    Levels whose modularity is within 1e-12 of the maximum count as ties and
    resolve to the one with fewer communities.
    """
    if net.n == 0:
        raise InputError("cannot detect communities in an empty network")
    if not (isinstance(walk_length, (int, np.integer)) and walk_length >= 1):
        raise InputError(f"walk_length must be a positive integer, got {walk_length!r}")
    levels = walktrap_merges(net, walk_length)
    if net.m == 0:
        return Partition(net.labels, levels[-1], None)
    qs = [modularity(net, m) for m in levels]
    best = max(qs)
    pick = max(i for i, q in enumerate(qs) if q >= best - 1e-12)
    return Partition(net.labels, levels[pick], qs[pick])
