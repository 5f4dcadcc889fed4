import numpy as np
import pytest

from cutboost import (
    GraphError,
    bipartite_matchings,
    brute_force_min_cut,
    cut_from_side,
    cycle_union,
    dumbbell,
    stoer_wagner,
)


def test_dumbbell_shape_and_cut():
    g = dumbbell(4, 1.0)
    assert g.n == 8
    assert g.m == 2 * 6 + 1
    cut = brute_force_min_cut(g)
    assert cut.weight == 1.0
    assert cut.side in ({0, 1, 2, 3}, {4, 5, 6, 7})


def test_dumbbell_fractional_bridge():
    g = dumbbell(5, 2.5)
    assert stoer_wagner(g).weight == 2.5


def test_dumbbell_rejects():
    with pytest.raises(GraphError):
        dumbbell(2, 0.5)
    with pytest.raises(GraphError):
        dumbbell(4, 3.0)  # bridge as heavy as a clique degree: cut not unique
    with pytest.raises(GraphError):
        dumbbell(4, 0.0)


def test_bipartite_matchings_degrees_and_cut():
    rng = np.random.default_rng(0)
    n, k, l = 12, 4, 2
    g = bipartite_matchings(n, k, l, rng)
    # every vertex has k edge-instances except vertex 0 with k - l
    deg = np.zeros(n)
    for u, v, w in g.edges:
        assert (u < n // 2) != (v < n // 2)  # strictly bipartite
        deg[u] += w
        deg[v] += w
    assert deg[0] == k - l
    # the l removed instances also lower their partners' degrees
    assert all(deg[v] == k for v in range(1, n // 2))
    assert sum(k - deg[v] for v in range(n // 2, n)) == l
    # the isolated-vertex-0 cut is minimum
    assert stoer_wagner(g).weight == k - l
    assert cut_from_side(g, {0}).weight == k - l


def test_bipartite_matchings_deterministic():
    a = bipartite_matchings(10, 3, 1, np.random.default_rng(7))
    b = bipartite_matchings(10, 3, 1, np.random.default_rng(7))
    assert a.edges == b.edges


def test_bipartite_matchings_rejects():
    rng = np.random.default_rng(0)
    with pytest.raises(GraphError):
        bipartite_matchings(7, 3, 1, rng)
    with pytest.raises(GraphError):
        bipartite_matchings(8, 3, 3, rng)
    with pytest.raises(GraphError):
        bipartite_matchings(8, 5, 1, rng)  # k > n/2


def test_cycle_union_cut_weight():
    rng = np.random.default_rng(1)
    n, k = 10, 3
    g = cycle_union(n, k, 0.0, rng)
    half = n // 2
    side = set(range(half))
    # each crossing cycle contributes exactly 2 to the (S,T) cut
    assert cut_from_side(g, side).weight == 2 * k
    assert stoer_wagner(g).weight <= 2 * k


def test_cycle_union_total_degree():
    rng = np.random.default_rng(2)
    n, k, eps = 8, 2, 1.0
    g = cycle_union(n, k, eps, rng)
    # k crossing cycles + k cycles per side contribute degree 2 each per
    # vertex; the eps-cycles only add more
    deg = np.zeros(n)
    for u, v, w in g.edges:
        deg[u] += w
        deg[v] += w
    assert all(deg >= 2 * k + 2 * k)


def test_cycle_union_small_n():
    g = cycle_union(6, 2, 1.0, np.random.default_rng(3))
    assert g.n == 6
    assert cut_from_side(g, {0, 1, 2}).weight == 4


def test_cycle_union_rejects():
    rng = np.random.default_rng(0)
    with pytest.raises(GraphError):
        cycle_union(5, 2, 0.0, rng)
    with pytest.raises(GraphError):
        cycle_union(8, 0, 0.0, rng)
    with pytest.raises(GraphError):
        cycle_union(8, 2, -0.5, rng)
