import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import best_modularity, textbook_modularity, triangle_clustering
from tsnet.errors import InputError
from tsnet.graphalg import (
    degree,
    degrees,
    density,
    detect_communities,
    local_clustering,
    modularity,
)
from tsnet.netbuild import Network


def net_from(n, edges, labels=None):
    labels = labels or tuple(f"v{i}" for i in range(n))
    return Network(tuple(labels), ("metier",) * n, frozenset(edges))


def random_net(rng, n, p):
    return net_from(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p])


def complete(n):
    return net_from(n, itertools.combinations(range(n), 2))


def bridged_cliques(a, b):
    edges = list(itertools.combinations(range(a), 2))
    edges += list(itertools.combinations(range(a, a + b), 2))
    edges.append((a - 1, a))
    return net_from(a + b, edges)


STAR = net_from(5, [(0, 1), (0, 2), (0, 3)])  # node 4 isolated
TRIANGLE = net_from(3, [(0, 1), (1, 2), (0, 2)])
TWO_TRIANGLES = net_from(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


class TestDegreeDensity:
    def test_star(self):
        assert degree(STAR, "v0") == 3
        assert degree(STAR, 4) == 0
        with pytest.raises(InputError):
            degree(STAR, "nope")

    @given(st.integers(0, 2**31))
    def test_handshake(self, seed):
        net = random_net(np.random.default_rng(seed), 12, 0.3)
        assert degrees(net).sum() == 2 * net.m
        assert [degree(net, i) for i in range(net.n)] == degrees(net).tolist()

    def test_density(self):
        assert density(complete(4)) == 1.0
        assert density(net_from(3, [(0, 1), (1, 2)])) == pytest.approx(2 / 3)
        with pytest.raises(InputError):
            density(net_from(1, []))


class TestClustering:
    def test_examples(self):
        assert all(local_clustering(TRIANGLE, i) == 1.0 for i in range(3))
        assert local_clustering(STAR, 0) == 0.0
        assert local_clustering(STAR, 4) == 0.0

    def test_triangle_oracle(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            net = random_net(rng, 10, rng.uniform(0.1, 0.9))
            A = net.adjacency()
            for i in range(net.n):
                c = local_clustering(net, i)
                assert c == pytest.approx(triangle_clustering(A, i), abs=1e-15)
                if c == 1.0:
                    nb = [j for j in range(net.n) if A[i, j]]
                    assert all(A[a, b] for a, b in itertools.combinations(nb, 2))


class TestModularity:
    def test_two_triangles(self):
        assert modularity(TWO_TRIANGLES, [0, 0, 0, 1, 1, 1]) == pytest.approx(0.5, abs=1e-12)
        assert modularity(TWO_TRIANGLES, [0] * 6) == pytest.approx(0.0, abs=1e-12)

    def test_singletons_on_k4_negative(self):
        # -4 * (3/12)^2
        assert modularity(complete(4), [0, 1, 2, 3]) == pytest.approx(-0.25, abs=1e-12)

    def test_mapping_assignment(self):
        q = modularity(TWO_TRIANGLES, {f"v{i}": i // 3 for i in range(6)})
        assert q == pytest.approx(0.5, abs=1e-12)

    def test_errors(self):
        with pytest.raises(InputError, match="undefined"):
            modularity(net_from(3, []), [0, 0, 0])
        with pytest.raises(InputError):
            modularity(TRIANGLE, [0, 0])
        with pytest.raises(InputError):
            modularity(TRIANGLE, {"v0": 0})

    def test_textbook_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            net = random_net(rng, 12, 0.3)
            if net.m == 0:
                continue
            memb = rng.integers(0, 4, size=12).tolist()
            assert modularity(net, memb) == pytest.approx(
                textbook_modularity(net.adjacency(), memb), rel=1e-12, abs=1e-15
            )


class TestCommunities:
    @pytest.mark.parametrize("a,b", list(itertools.product(range(4, 9), repeat=2)))
    def test_planted_cliques(self, a, b):
        part = detect_communities(bridged_cliques(a, b))
        assert part.membership == tuple([0] * a + [1] * b)
        assert part.modularity == pytest.approx(modularity(bridged_cliques(a, b), part.membership), abs=1e-12)

    def test_matches_brute_force_on_small_graphs(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            # two dense blocks with a few cross links
            n = 8
            edges = [
                (i, j)
                for i, j in itertools.combinations(range(n), 2)
                if rng.random() < (0.9 if (i < 4) == (j < 4) else 0.1)
            ]
            net = net_from(n, edges)
            best, _ = best_modularity(net.adjacency())
            assert detect_communities(net).modularity <= best + 1e-12
        net = bridged_cliques(4, 4)
        best, _ = best_modularity(net.adjacency())
        assert detect_communities(net).modularity == pytest.approx(best, abs=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_complete_graph_single_community(self, n):
        part = detect_communities(complete(n))
        assert part.n_communities == 1
        assert part.modularity == pytest.approx(0.0, abs=1e-12)

    def test_components_never_merge(self):
        part = detect_communities(TWO_TRIANGLES)
        assert part.membership == (0, 0, 0, 1, 1, 1)
        part = detect_communities(STAR)
        assert part.membership[4] not in part.membership[:4]

    def test_edgeless(self):
        part = detect_communities(net_from(4, []))
        assert part.membership == (0, 1, 2, 3)
        assert part.modularity is None

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31), st.floats(0.05, 0.6), st.integers(1, 6))
    def test_partition_invariants(self, seed, p, t):
        net = random_net(np.random.default_rng(seed), 14, p)
        part = detect_communities(net, t)
        assert len(part.membership) == net.n
        assert part == detect_communities(net, t)
        if net.m:
            assert part.modularity == pytest.approx(modularity(net, part.membership), abs=1e-9)
            assert part.modularity >= modularity(net, [0] * net.n) - 1e-12
        # nodes in different components are never grouped
        comp = _components(net)
        for u, v in itertools.combinations(range(net.n), 2):
            if part.membership[u] == part.membership[v]:
                assert comp[u] == comp[v]

    def test_walk_length_validation(self):
        with pytest.raises(InputError):
            detect_communities(TRIANGLE, 0)
        with pytest.raises(InputError):
            detect_communities(net_from(0, []))


def _components(net):
    comp = list(range(net.n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for u, v in net.edges:
        comp[find(u)] = find(v)
    return [find(i) for i in range(net.n)]
