"""Deterministic minimum-cut oracles: brute force and Stoer-Wagner."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import (
    Cut,
    GraphError,
    WeightedGraph,
    ContractionState,
    cut_from_side,
    induced_simple_graph,
)

BRUTE_FORCE_LIMIT = 20


def brute_force_min_cut(g: WeightedGraph) -> Cut:
    """Enumerate all proper sides containing vertex 0; ties go to the
    lexicographically smallest side set."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise GraphError(f"brute force refused for n={g.n} > {BRUTE_FORCE_LIMIT}")
    best = None
    best_key = None
    others = list(range(1, g.n))
    for size in range(0, g.n - 1):
        for extra in combinations(others, size):
            side = (0,) + extra
            cut = cut_from_side(g, side)
            key = (cut.weight, sorted(side))
            if best is None or key < best_key:
                best, best_key = cut, key
    return best


def _connected_component(g: WeightedGraph, start: int = 0):
    adj = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def stoer_wagner(g: WeightedGraph) -> Cut:
    """Deterministic global minimum cut via repeated maximum-adjacency
    sweeps, O(n^3) with dense arrays. Disconnected input returns a
    weight-0 cut around one component."""
    comp = _connected_component(g)
    if len(comp) < g.n:
        return cut_from_side(g, comp)

    # merged simple graph; groups lift metavertex sides back to g
    simple, groups = induced_simple_graph(ContractionState(g))
    n = simple.n
    W = np.zeros((n, n))
    us, vs, ws = simple.edge_arrays()
    W[us, vs] = ws
    W[vs, us] = ws

    merged = [list(grp) for grp in groups]
    active = list(range(n))
    best_side = None
    best_weight = np.inf
    for _ in range(n - 1):
        k = len(active)
        if k == 1:
            break
        # maximum adjacency sweep over the active vertices
        conn = np.zeros(k)
        in_a = np.zeros(k, dtype=bool)
        order = []
        for _step in range(k):
            cand = np.where(~in_a, conn, -np.inf)
            nxt = int(np.argmax(cand))
            in_a[nxt] = True
            order.append(nxt)
            conn += W[np.ix_(active, [active[nxt]])].ravel()
        s_idx, t_idx = order[-2], order[-1]
        cut_of_phase = conn[t_idx] - W[active[t_idx], active[t_idx]]
        if cut_of_phase < best_weight:
            best_weight = float(cut_of_phase)
            best_side = list(merged[active[t_idx]])
        # merge t into s
        s, t = active[s_idx], active[t_idx]
        W[s, :] += W[t, :]
        W[:, s] += W[:, t]
        W[s, s] = 0.0
        merged[s] = merged[s] + merged[t]
        active.pop(t_idx)
    return cut_from_side(g, best_side)
