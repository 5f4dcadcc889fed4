"""Weighted undirected multigraph with contraction state and cut evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dsu import RollbackDSU

# Relative tolerance for comparing cut weights of fractional-weight inputs.
WEIGHT_RTOL = 1e-9


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable weighted multigraph on vertices 0..n-1.

    Parallel edges are kept as distinct entries; self-loops are rejected
    at construction. Edge order is stable.
    """

    n: int
    edges: tuple  # tuple of (u, v, w)
    _arrays: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_arrays(self):
        """Return (us, vs, ws) as numpy arrays, cached."""
        if "us" not in self._arrays:
            if self.m:
                us, vs, ws = (np.asarray(x) for x in zip(*self.edges))
            else:
                us = vs = np.zeros(0, dtype=np.int64)
                ws = np.zeros(0, dtype=np.float64)
            self._arrays["us"] = us.astype(np.int64)
            self._arrays["vs"] = vs.astype(np.int64)
            self._arrays["ws"] = ws.astype(np.float64)
        return self._arrays["us"], self._arrays["vs"], self._arrays["ws"]

    def total_weight(self) -> float:
        return float(self.edge_arrays()[2].sum())

    def pairs(self):
        """Unordered (min, max) vertex pair per edge, in edge order."""
        return [(u, v) if u < v else (v, u) for u, v, _ in self.edges]


@dataclass(frozen=True)
class Cut:
    """One side of a vertex bipartition with its crossing edges and weight."""

    side: frozenset
    crossing_edges: tuple
    weight: float


def build_graph(n: int, edges) -> WeightedGraph:
    """Validate and construct a WeightedGraph."""
    if n < 2:
        raise GraphError(f"need at least 2 vertices, got n={n}")
    clean = []
    for i, (u, v, w) in enumerate(edges):
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"self-loop at edge index {i}: ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex id out of range at edge index {i}: ({u},{v})")
        w = float(w)
        if not math.isfinite(w) or w < 0:
            raise GraphError(f"bad weight at edge index {i}: {w}")
        clean.append((u, v, w))
    return WeightedGraph(n=n, edges=tuple(clean))


def cut_from_side(g: WeightedGraph, side) -> Cut:
    """Exact cut induced by a vertex subset."""
    side = frozenset(side)
    if not side or len(side) >= g.n:
        raise GraphError("cut side must be a nonempty proper vertex subset")
    mask = np.zeros(g.n, dtype=bool)
    mask[list(side)] = True
    us, vs, ws = g.edge_arrays()
    crossing = np.nonzero(mask[us] != mask[vs])[0]
    return Cut(
        side=side,
        crossing_edges=tuple(int(i) for i in crossing),
        weight=float(ws[crossing].sum()),
    )


def cut_weight_for_labels(g: WeightedGraph, labels: np.ndarray) -> float:
    """Weight of edges whose endpoints carry different labels."""
    us, vs, ws = g.edge_arrays()
    return float(ws[labels[us] != labels[vs]].sum())


def weights_match(a: float, b: float) -> bool:
    """Cut-weight equality: exact for integers, relative tolerance otherwise."""
    if float(a).is_integer() and float(b).is_integer():
        return a == b
    return math.isclose(a, b, rel_tol=WEIGHT_RTOL, abs_tol=1e-12)


class ContractionState:
    """Tracks metavertex merges over a base graph via a rollback union-find."""

    def __init__(self, base: WeightedGraph, dsu: RollbackDSU | None = None):
        self.base = base
        self.dsu = dsu if dsu is not None else RollbackDSU(base.n)

    @property
    def k(self) -> int:
        return self.dsu.components

    def same_metavertex(self, u: int, v: int) -> bool:
        return self.dsu.find(u) == self.dsu.find(v)

    def contract(self, u: int, v: int) -> None:
        if not self.dsu.union(u, v):
            raise GraphError(f"contract({u},{v}): endpoints share a metavertex")

    def labels(self) -> np.ndarray:
        """Root label per original vertex."""
        return np.array([self.dsu.find(v) for v in range(self.base.n)])

    def side_of(self, vertex: int) -> frozenset:
        """Original vertices sharing `vertex`'s metavertex (needs any k)."""
        root = self.dsu.find(vertex)
        return frozenset(v for v in range(self.base.n) if self.dsu.find(v) == root)

    def two_way_cut(self) -> Cut:
        """The cut defined by the current 2-metavertex partition."""
        if self.k != 2:
            raise GraphError(f"two_way_cut needs exactly 2 metavertices, have {self.k}")
        return cut_from_side(self.base, self.side_of(0))


def induced_simple_graph(state: ContractionState):
    """Simple weighted graph on the current metavertices.

    Self-loops are dropped and parallel edges merged by weight summation.
    Returns (graph, groups) where groups[i] lists the original vertices of
    metavertex i, so cuts on the induced graph lift back to the base graph.
    """
    if state.k < 2:
        raise GraphError("need at least 2 live metavertices")
    base = state.base
    labels = state.labels()
    roots = sorted(set(int(r) for r in labels))
    index = {r: i for i, r in enumerate(roots)}
    groups = [[] for _ in roots]
    for v in range(base.n):
        groups[index[int(labels[v])]].append(v)
    merged = {}
    for u, v, w in base.edges:
        a, b = index[int(labels[u])], index[int(labels[v])]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        merged[key] = merged.get(key, 0.0) + w
    g = build_graph(len(roots), [(a, b, w) for (a, b), w in sorted(merged.items())])
    return g, groups


def read_graph_file(path) -> WeightedGraph:
    """Parse the text graph format: `n m` header then `u v w` lines."""
    header = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 2:
                    raise GraphError(f"bad header line: {line!r}")
                header = (int(parts[0]), int(parts[1]))
                continue
            if len(parts) != 3:
                raise GraphError(f"bad edge line: {line!r}")
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    if header is None:
        raise GraphError("empty graph file")
    n, m = header
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, file has {len(edges)}")
    return build_graph(n, edges)


def write_graph_file(g: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w!r}\n")
