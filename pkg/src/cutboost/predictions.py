"""Per-edge cut predictions: representation, synthesis, and error measurement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Cut, GraphError, WeightedGraph, build_graph, cut_from_side
from .contraction import karger_trial


class PredictionError(ValueError):
    pass


def _pair(u: int, v: int):
    if u == v:
        raise PredictionError(f"self-pair ({u},{v})")
    return (u, v) if u < v else (v, u)


class Prediction:
    """Map from unordered vertex pair to p in [0,1]; absent pairs are 0.

    Parallel edges of a pair share one value. Immutable after construction.
    """

    def __init__(self, values=None):
        self._values = {}
        if values:
            for (u, v), p in dict(values).items():
                p = float(p)
                if not 0.0 <= p <= 1.0:
                    raise PredictionError(f"p({u},{v})={p} outside [0,1]")
                self._values[_pair(int(u), int(v))] = p

    def get(self, u: int, v: int) -> float:
        return self._values.get(_pair(u, v), 0.0)

    def items(self):
        return self._values.items()

    def __len__(self):
        return len(self._values)

    def per_edge(self, g: WeightedGraph) -> np.ndarray:
        return np.array([self.get(u, v) for u, v, _ in g.edges])

    def boosted_weights(self, g: WeightedGraph, B: float) -> np.ndarray:
        """w_B(e) = (1 + (B-1)(1-p_e)) w(e)."""
        p = self.per_edge(g)
        _, _, ws = g.edge_arrays()
        return (1.0 + (B - 1.0) * (1.0 - p)) * ws

    @classmethod
    def from_edge_indices(cls, g: WeightedGraph, indices) -> "Prediction":
        """Binary prediction marking the given edges of g."""
        values = {}
        for e in indices:
            u, v, _ = g.edges[e]
            values[_pair(u, v)] = 1.0
        return cls(values)


@dataclass(frozen=True)
class ErrorProfile:
    eta: float
    rho_raw: float
    cut_weight: float

    @property
    def rho(self) -> float:
        return max(1.0, self.rho_raw)


def measure(g: WeightedGraph, cut: Cut, pred: Prediction) -> ErrorProfile:
    """False-negative rate eta and false-positive mass rho of a prediction
    relative to a reference cut:

    eta = sum_{e in C*} (1-p_e) w(e) / w(C*),
    rho = sum_{e not in C*} p_e w(e) / w(C*).
    """
    if cut.weight <= 0:
        raise PredictionError("reference cut has zero weight; eta undefined")
    in_cut = np.zeros(g.m, dtype=bool)
    in_cut[list(cut.crossing_edges)] = True
    p = pred.per_edge(g)
    _, _, ws = g.edge_arrays()
    eta = float(((1.0 - p[in_cut]) * ws[in_cut]).sum() / cut.weight)
    rho_raw = float((p[~in_cut] * ws[~in_cut]).sum() / cut.weight)
    return ErrorProfile(eta=eta, rho_raw=rho_raw, cut_weight=cut.weight)


def _greedy_fill(indices, weights, target, rng):
    """Random-permutation greedy subset: add while the running sum is under
    target. Overshoots by at most one edge weight; exact for unit weights
    and integer targets."""
    chosen = []
    total = 0.0
    for e in rng.permutation(len(indices)):
        if total >= target - 1e-12:
            break
        chosen.append(indices[e])
        total += weights[e]
    return chosen


def synthesize(
    g: WeightedGraph, cut: Cut, eta_target: float, rho_target: float, rng
) -> Prediction:
    """Controlled-error binary prediction (C* minus a random eta-weight
    subset, plus a random rho-weight subset of non-cut edges)."""
    if not 0 <= eta_target <= 1:
        raise PredictionError(f"eta target {eta_target} outside [0,1]")
    if rho_target < 0:
        raise PredictionError(f"negative rho target {rho_target}")
    _, _, ws = g.edge_arrays()
    cut_idx = list(cut.crossing_edges)
    non_idx = [e for e in range(g.m) if e not in set(cut_idx)]
    non_weight = float(ws[non_idx].sum()) if non_idx else 0.0
    if rho_target * cut.weight > non_weight + 1e-12:
        raise PredictionError(
            f"rho target {rho_target} infeasible; maximum achievable is "
            f"{non_weight / cut.weight}"
        )
    c_eta = set(_greedy_fill(cut_idx, ws[cut_idx], eta_target * cut.weight, rng))
    c_rho = _greedy_fill(non_idx, ws[non_idx], rho_target * cut.weight, rng)
    predicted = [e for e in cut_idx if e not in c_eta] + list(c_rho)
    return Prediction.from_edge_indices(g, predicted)


def perfect_prediction(g: WeightedGraph, cut: Cut) -> Prediction:
    return Prediction.from_edge_indices(g, cut.crossing_edges)


def heuristic_predict(g: WeightedGraph, k: int, rng) -> Prediction:
    """Union of the cuts from k contraction runs on a random half of the
    edges (restricted to the largest connected component of the sample)."""
    if k < 1:
        raise PredictionError("k must be >= 1")
    for _attempt in range(10):
        mask = rng.random(g.m) < 0.5
        sampled = [g.edges[e] for e in np.nonzero(mask)[0]]
        if not sampled:
            continue
        component = _largest_component(g.n, sampled)
        if len(component) < 2:
            continue
        remap = {v: i for i, v in enumerate(sorted(component))}
        back = sorted(component)
        sub_edges = [
            (remap[u], remap[v], w) for u, v, w in sampled if u in remap and v in remap
        ]
        if not sub_edges:
            continue
        sub = build_graph(len(component), sub_edges)
        pairs = set()
        for _run in range(k):
            cut, _ = karger_trial(sub, rng)
            for e in cut.crossing_edges:
                su, sv, _ = sub.edges[e]
                pairs.add(_pair(back[su], back[sv]))
        return Prediction({pair: 1.0 for pair in pairs})
    raise PredictionError("sampled subgraph degenerate in 10 attempts")


def _largest_component(n: int, edges) -> set:
    adj = {}
    for u, v, _ in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = set()
    best = set()
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        if len(comp) > len(best):
            best = comp
    return best


def read_prediction_file(path) -> Prediction:
    """Parse `u v p` lines; `#` comments; unlisted pairs default to 0."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise PredictionError(f"bad prediction line: {line!r}")
            values[(int(parts[0]), int(parts[1]))] = float(parts[2])
    return Prediction(values)


def write_prediction_file(pred: Prediction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (u, v), p in sorted(pred.items()):
            fh.write(f"{u} {v} {p!r}\n")
