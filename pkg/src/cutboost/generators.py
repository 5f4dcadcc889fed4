"""Synthetic instance families with seeded determinism.

Unweighted families store parallel-edge multiplicities as integer weights;
the contraction distribution is identical and the arithmetic stays exact.
"""

from __future__ import annotations

from .graph import GraphError, WeightedGraph, build_graph


def bipartite_matchings(n: int, k: int, l: int, rng) -> WeightedGraph:
    """Union of k random perfect matchings between two n/2-vertex sides,
    then l random edges incident to vertex 0 removed."""
    if n < 4 or n % 2:
        raise GraphError(f"n must be even and >= 4, got {n}")
    if not 1 <= l < k <= n // 2:
        raise GraphError(f"need 1 <= l < k <= n/2, got k={k}, l={l}")
    half = n // 2
    mult = {}
    for _ in range(k):
        perm = rng.permutation(half)
        for i in range(half):
            pair = (i, half + int(perm[i]))
            mult[pair] = mult.get(pair, 0) + 1
    incident = [pair for pair, c in mult.items() for _ in range(c) if pair[0] == 0]
    removed = rng.choice(len(incident), size=l, replace=False)
    for r in removed:
        pair = incident[int(r)]
        mult[pair] -= 1
    edges = [(u, v, float(c)) for (u, v), c in sorted(mult.items()) if c > 0]
    return build_graph(n, edges)


def _cycle_edges(vertices, rng, mult):
    order = [vertices[int(i)] for i in rng.permutation(len(vertices))]
    for a, b in zip(order, order[1:] + order[:1]):
        pair = (a, b) if a < b else (b, a)
        mult[pair] = mult.get(pair, 0) + 1


def cycle_union(n: int, k: int, eps: float, rng) -> WeightedGraph:
    """k Hamiltonian cycles crossing the (S,T) bipartition exactly twice,
    k full-length cycles inside each side, and floor(eps*k) smaller cycles
    confined to one side. The (S,T) cut has weight exactly 2k."""
    if n < 6 or n % 2:
        raise GraphError(f"n must be even and >= 6, got {n}")
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    if eps < 0:
        raise GraphError(f"eps must be >= 0, got {eps}")
    half = n // 2
    s_side = list(range(half))
    t_side = list(range(half, n))
    mult = {}
    for _ in range(k):
        # a path through S joined to a path through T: crosses exactly twice
        sp = [s_side[int(i)] for i in rng.permutation(half)]
        tp = [t_side[int(i)] for i in rng.permutation(half)]
        cycle = sp + tp
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            pair = (a, b) if a < b else (b, a)
            mult[pair] = mult.get(pair, 0) + 1
    for _ in range(k):
        _cycle_edges(s_side, rng, mult)
        _cycle_edges(t_side, rng, mult)
    for _ in range(int(eps * k)):
        side = s_side if rng.random() < 0.5 else t_side
        # random length in [3, n/2-1]; n=6 leaves only length 3
        length = 3 if half <= 3 else int(rng.integers(3, half))
        members = [side[int(i)] for i in rng.choice(half, size=length, replace=False)]
        _cycle_edges(members, rng, mult)
    edges = [(u, v, float(c)) for (u, v), c in sorted(mult.items())]
    return build_graph(n, edges)


def dumbbell(clique_size: int, bridge_weight: float) -> WeightedGraph:
    """Two unit-weight cliques joined by a single bridge; the bridge is the
    unique minimum cut as long as its weight stays below clique_size - 1."""
    if clique_size < 3:
        raise GraphError(f"clique_size must be >= 3, got {clique_size}")
    if not 0 < bridge_weight < clique_size - 1:
        raise GraphError(
            f"bridge weight {bridge_weight} must be in (0, {clique_size - 1}) "
            "to keep the minimum cut unique"
        )
    c = clique_size
    edges = []
    for offset in (0, c):
        for i in range(c):
            for j in range(i + 1, c):
                edges.append((offset + i, offset + j, 1.0))
    edges.append((0, c, float(bridge_weight)))
    return build_graph(2 * c, edges)
