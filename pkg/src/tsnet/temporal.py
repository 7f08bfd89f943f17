"""Yearly network sequences, edge churn and method selection."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import graphalg
from .distance import distance_matrix, normalize_matrix
from .errors import InputError
from .netbuild import (
    Network,
    eps_network,
    knn_network,
    significant_links_network,
    weighted_network,
)
from .tseries import SeriesSet, normalize_set, slice_year

METHODS = ("knn", "eps", "weighted", "significant")

LabelEdge = tuple[str, str]


@dataclass(frozen=True)
class MethodSpec:
    """Network construction method and its parameter.

    ``param`` is ``k`` for knn, the threshold for eps, the significance level
    for significant, and unused for weighted.
    """

    method: str
    param: Optional[float] = None
    bonferroni: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.method == "knn":
            k = self.param
            if k is None or int(k) != k or k < 1:
                raise InputError(f"knn needs a positive integer k, got {k!r}")
            object.__setattr__(self, "param", int(k))
        elif self.method == "eps":
            if self.param is None or not self.param > 0:
                raise InputError(f"eps needs a positive threshold, got {self.param!r}")
        elif self.method == "significant":
            if self.param is None:
                object.__setattr__(self, "param", 0.05)
            elif not 0 < self.param < 1:
                raise InputError(f"alpha must lie in (0, 1), got {self.param!r}")
        else:
            object.__setattr__(self, "param", None)

    def __str__(self):
        return self.method if self.param is None else f"{self.method}={self.param:g}"


def build_network(year_set: SeriesSet, spec: MethodSpec) -> Network:
    """Construct one network from an already-normalized set of series."""
    if spec.method == "significant":
        return significant_links_network(year_set, spec.param, spec.bonferroni)
    D = distance_matrix(year_set)
    if spec.method == "knn":
        return knn_network(D, spec.param)
    Dn = normalize_matrix(D)
    if spec.method == "eps":
        return eps_network(Dn, spec.param)
    return weighted_network(Dn)


@dataclass(frozen=True)
class YearlyNetworks:
    networks: dict[int, Network]

    def __post_init__(self):
        years = sorted(self.networks)
        if not years:
            raise InputError("no yearly networks")
        if years != list(range(years[0], years[-1] + 1)):
            raise InputError(f"years are not contiguous: {years}")
        first = self.networks[years[0]]
        for y in years:
            net = self.networks[y]
            if net.labels != first.labels or net.kinds != first.kinds:
                raise InputError(f"network for {y} has a different node set")
        object.__setattr__(self, "networks", {y: self.networks[y] for y in years})

    @property
    def years(self) -> list[int]:
        return list(self.networks)

    def __getitem__(self, year: int) -> Network:
        return self.networks[year]

    def __len__(self):
        return len(self.networks)

    def items(self):
        return self.networks.items()


def yearly_networks(
    set_: SeriesSet,
    spec: MethodSpec,
    years: Optional[Sequence[int]] = None,
    renormalize: bool = True,
) -> YearlyNetworks:
    """One network per calendar year.

    With ``renormalize`` each 12-month slice is min-max normalized on its own;
    otherwise the full span is normalized once and then sliced.
    """
    if years is None:
        years = set_.years()
    base = set_ if renormalize else normalize_set(set_)
    nets = {}
    for y in years:
        ys = slice_year(base, y)
        if renormalize:
            ys = normalize_set(ys)
        nets[y] = build_network(ys, spec)
    return YearlyNetworks(nets)


@dataclass(frozen=True)
class EdgeDiff:
    new: frozenset[LabelEdge]
    retained: frozenset[LabelEdge]
    dropped: frozenset[LabelEdge]

    def as_dict(self) -> dict:
        return {
            "new": [list(e) for e in sorted(self.new)],
            "retained": [list(e) for e in sorted(self.retained)],
            "dropped": [list(e) for e in sorted(self.dropped)],
        }


def edge_diff(prev: Network, curr: Network) -> EdgeDiff:
    if set(prev.labels) != set(curr.labels):
        raise InputError("edge_diff needs networks over the same node set")
    a, b = prev.label_edges(), curr.label_edges()
    return EdgeDiff(new=b - a, retained=a & b, dropped=a - b)


def top_degree_nodes(net: Network, count: int = 3) -> list[tuple[str, int]]:
    """Highest-degree nodes, keeping every node tied with the last place."""
    if net.n == 0:
        raise InputError("empty network")
    if count < 1:
        raise InputError(f"count must be >= 1, got {count}")
    deg = graphalg.degrees(net)
    ranked = sorted(zip(net.labels, deg.tolist()), key=lambda t: (-t[1], t[0]))
    if count >= len(ranked):
        return ranked
    cutoff = ranked[count - 1][1]
    return [t for t in ranked if t[1] >= cutoff]


@dataclass(frozen=True)
class MethodRow:
    method: str
    param: Optional[float]
    mean_modularity: Optional[float]
    mean_density: float
    densities: tuple[float, ...] = field(repr=False, default=())
    modularities: tuple[Optional[float], ...] = field(repr=False, default=())


@dataclass(frozen=True)
class MethodReport:
    rows: tuple[MethodRow, ...]

    def row(self, method: str, param=None) -> MethodRow:
        for r in self.rows:
            if r.method == method and (param is None or r.param == param):
                return r
        raise KeyError((method, param))


DEFAULT_K = (2, 3, 5, 7, 10)
DEFAULT_EPS = (0.3, 0.5, 0.7, 0.9)


def evaluate(nets: YearlyNetworks, walk_length: int = 4) -> tuple[list[float], list[Optional[float]]]:
    dens, mods = [], []
    for _, net in nets.items():
        dens.append(graphalg.density(net))
        mods.append(graphalg.detect_communities(net, walk_length).modularity)
    return dens, mods


def method_selection_report(
    set_: SeriesSet,
    k_values: Sequence[int] = DEFAULT_K,
    eps_values: Sequence[float] = DEFAULT_EPS,
    alpha: Optional[float] = 0.05,
    include_weighted: bool = True,
    walk_length: int = 4,
    years: Optional[Sequence[int]] = None,
    renormalize: bool = True,
) -> MethodReport:
    """Mean density and mean detected-community modularity per candidate.

    A candidate whose yearly networks include an edgeless one gets
    ``mean_modularity=None``.
    """
    if not k_values and not eps_values:
        raise InputError("method selection needs at least one k or eps candidate")
    specs = [MethodSpec("knn", k) for k in k_values]
    specs += [MethodSpec("eps", e) for e in eps_values]
    if include_weighted:
        specs.append(MethodSpec("weighted"))
    if alpha is not None:
        specs.append(MethodSpec("significant", alpha))
    rows = []
    for spec in specs:
        nets = yearly_networks(set_, spec, years, renormalize)
        dens, mods = evaluate(nets, walk_length)
        mean_mod = None if any(q is None for q in mods) else float(np.mean(mods))
        rows.append(
            MethodRow(spec.method, spec.param, mean_mod, float(np.mean(dens)), tuple(dens), tuple(mods))
        )
    return MethodReport(tuple(rows))
