import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tsnet.errors import InputError
from tsnet.graphalg import density
from tsnet.netbuild import Network
from tsnet.temporal import (
    MethodSpec,
    YearlyNetworks,
    edge_diff,
    method_selection_report,
    top_degree_nodes,
    yearly_networks,
)
from tsnet.tseries import SeriesSet, TimeSeries


def random_set(n=10, years=3, seed=0):
    rng = np.random.default_rng(seed)
    kinds = ("island", "metier", "classification")
    return SeriesSet(
        tuple(TimeSeries(f"s{i:02d}", kinds[i % 3], (2010, 1), rng.random(12 * years)) for i in range(n))
    )


def net(labels, edges):
    return Network.from_label_edges(labels, ["island"] * len(labels), edges)


class TestMethodSpec:
    def test_validation(self):
        assert MethodSpec("knn", 2.0).param == 2
        assert MethodSpec("significant").param == 0.05
        assert MethodSpec("weighted", 3).param is None
        for bad in [("knn", 0), ("knn", 1.5), ("eps", -1), ("significant", 1.0), ("foo", 1)]:
            with pytest.raises(InputError):
                MethodSpec(*bad)


class TestYearly:
    def test_one_network_per_year(self):
        s = random_set(years=8)
        nets = yearly_networks(s, MethodSpec("knn", 2))
        assert nets.years == list(range(2010, 2018))
        assert len({n.labels for _, n in nets.items()}) == 1

    def test_single_year(self):
        nets = yearly_networks(random_set(years=1), MethodSpec("eps", 0.5))
        assert nets.years == [2010]

    @pytest.mark.parametrize("spec", [MethodSpec("knn", 3), MethodSpec("eps", 0.4), MethodSpec("weighted"), MethodSpec("significant", 0.1)])
    def test_deterministic(self, spec):
        s = random_set()
        a, b = yearly_networks(s, spec), yearly_networks(s, spec)
        for y in a.years:
            assert a[y].edges == b[y].edges
            assert a[y].weights == b[y].weights

    def test_renormalize_choice(self):
        s = random_set(years=3)
        spec = MethodSpec("eps", 0.3)
        a = yearly_networks(s, spec, renormalize=True)
        b = yearly_networks(s, spec, renormalize=False)
        assert a.years == b.years

    def test_scale_invariance_per_year(self):
        # per-year min-max makes a per-year rescaling of the raw data irrelevant
        s = random_set(years=2)
        M = s.matrix().copy()
        M[:, 12:] = M[:, 12:] * 50 + 7
        s2 = SeriesSet(tuple(t.with_values(M[i]) for i, t in enumerate(s)))
        spec = MethodSpec("knn", 2)
        a, b = yearly_networks(s, spec), yearly_networks(s2, spec)
        assert a[2011].edges == b[2011].edges

    def test_container_invariants(self):
        a = net(["a", "b"], [("a", "b")])
        with pytest.raises(InputError):
            YearlyNetworks({2010: a, 2012: a})
        with pytest.raises(InputError):
            YearlyNetworks({2010: a, 2011: net(["a", "c"], [])})


class TestEdgeDiff:
    def test_example(self):
        labels = list("abcd")
        d = edge_diff(net(labels, [("a", "b"), ("b", "c")]), net(labels, [("b", "c"), ("c", "d")]))
        assert d.new == {("c", "d")} and d.retained == {("b", "c")} and d.dropped == {("a", "b")}

    def test_identity(self):
        n = net(list("abc"), [("a", "b"), ("a", "c")])
        d = edge_diff(n, n)
        assert not d.new and not d.dropped and d.retained == n.label_edges()

    def test_mismatch(self):
        with pytest.raises(InputError):
            edge_diff(net(list("ab"), []), net(list("ac"), []))

    @settings(max_examples=200)
    @given(st.integers(0, 2**31))
    def test_set_identities(self, seed):
        rng = np.random.default_rng(seed)
        labels = [f"v{i}" for i in range(9)]
        pairs = list(itertools.combinations(labels, 2))
        prev = net(labels, [p for p in pairs if rng.random() < 0.3])
        curr = net(labels, [p for p in pairs if rng.random() < 0.3])
        d = edge_diff(prev, curr)
        assert not d.new & d.retained
        assert d.retained | d.dropped == prev.label_edges()
        assert d.retained | d.new == curr.label_edges()
        assert len(d.new) + len(d.retained) == curr.m


class TestTopDegree:
    def test_star(self):
        star = net(list("abcd"), [("a", "b"), ("a", "c"), ("a", "d")])
        assert top_degree_nodes(star, 1) == [("a", 3)]

    def test_all_tied(self):
        ring = net(list("dcba"), [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        assert top_degree_nodes(ring, 1) == [("a", 2), ("b", 2), ("c", 2), ("d", 2)]

    def test_ties_at_cutoff_included(self):
        g = net(list("abcdef"), [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("d", "e"), ("e", "f")])
        # degrees a3 b2 c2 d2 e2 f1
        assert top_degree_nodes(g, 2) == [("a", 3), ("b", 2), ("c", 2), ("d", 2), ("e", 2)]

    def test_errors(self):
        with pytest.raises(InputError):
            top_degree_nodes(net([], []), 1)
        with pytest.raises(InputError):
            top_degree_nodes(net(["a"], []), 0)


class TestMethodSelection:
    def test_rows_and_exact_densities(self):
        s = random_set(n=9, years=3, seed=4)
        rep = method_selection_report(s, k_values=(2, 8), eps_values=(0.3, 0.9), alpha=0.05)
        assert [(r.method, r.param) for r in rep.rows] == [
            ("knn", 2), ("knn", 8), ("eps", 0.3), ("eps", 0.9), ("weighted", None), ("significant", 0.05),
        ]
        assert rep.row("knn", 8).mean_density == 1.0
        assert rep.row("eps", 0.3).mean_density <= rep.row("eps", 0.9).mean_density
        assert rep.row("knn", 2).mean_density <= rep.row("knn", 8).mean_density
        for r in rep.rows:
            spec = MethodSpec(r.method, r.param)
            nets = yearly_networks(s, spec)
            assert list(r.densities) == [density(n) for _, n in nets.items()]
            assert r.mean_density == pytest.approx(np.mean(r.densities), abs=0)

    def test_edgeless_candidate_undefined(self):
        s = random_set(n=6, years=2, seed=2)
        rep = method_selection_report(s, k_values=(), eps_values=(1e-9,), alpha=None, include_weighted=False)
        row = rep.rows[0]
        assert row.mean_density == 0.0 and row.mean_modularity is None

    def test_needs_candidates(self):
        with pytest.raises(InputError):
            method_selection_report(random_set(), k_values=(), eps_values=())
