"""Randomized contraction algorithms: Karger, Boosted Karger, FPZ, Boosted FPZ.

All trial functions are deterministic given the numpy Generator they are
handed and return (Cut, TrialStats). Recursive algorithms share one graph
across sibling recursion branches through checkpoint/rollback instead of
copying.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .dsu import RollbackDSU
from .graph import (
    Cut,
    GraphError,
    WeightedGraph,
    ContractionState,
    cut_from_side,
    cut_weight_for_labels,
    induced_simple_graph,
)
from .sampler import PrefixWeightIndex, exponential_clock_order


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class QSchedule:
    """Per-step survival lower bound / branching bias sequence.

    q(i) = 1 - (1 + (B-1)*eta) / (B*i/2 - (B-1)*(rho + (1-eta)))  for i > t,
    q(i) = 1 - 2/i                                                for i <= t.
    With B = 1 the first form reduces to the second.
    """

    B: float
    eta: float
    rho: float
    t: int

    def __post_init__(self):
        if self.B < 1:
            raise ParameterError(f"B must be >= 1, got {self.B}")
        if not 0 <= self.eta <= 1:
            raise ParameterError(f"eta must be in [0,1], got {self.eta}")
        if self.rho < 1:
            raise ParameterError(f"rho must be >= 1 (clamp before constructing), got {self.rho}")
        if self.t < 2:
            raise ParameterError(f"t must be >= 2, got {self.t}")
        denom = self.B * (self.t + 1) / 2 - (self.B - 1) * (self.rho + (1 - self.eta))
        if denom <= 0:
            raise ParameterError(
                f"q-schedule denominator non-positive at i={self.t + 1} "
                f"(B={self.B}, eta={self.eta}, rho={self.rho}, t={self.t})"
            )
        if self.t >= 3 * self.rho + 2:
            q = self.q(self.t + 1)
            if not 0 < q < 1:
                raise ParameterError(f"q({self.t + 1}) = {q} outside (0,1)")

    def q(self, i: int) -> float:
        if i < 3:
            raise ParameterError(f"q(i) defined for i >= 3, got {i}")
        if i <= self.t or self.B == 1:
            return 1.0 - 2.0 / i
        num = 1 + (self.B - 1) * self.eta
        denom = self.B * i / 2 - (self.B - 1) * (self.rho + (1 - self.eta))
        return 1.0 - num / denom

    @classmethod
    def clamped(cls, B, eta, rho, t) -> "QSchedule":
        """Build from measured values, clamping rho up to 1."""
        return cls(B=B, eta=eta, rho=max(1.0, rho), t=t)


def default_boosted_karger_params(g: WeightedGraph):
    """(B, t) used when the prediction error is unknown."""
    return max(2, math.ceil(math.log(g.n))), 2


def default_boosted_fpz_params(g: WeightedGraph):
    B = max(2, math.ceil(math.log(g.n)))
    t = max(2, math.ceil(math.sqrt(g.m)))
    return B, min(t, g.n)


@dataclass
class TrialStats:
    edge_samples: int = 0
    contractions: int = 0
    branch_events: int = 0
    phase_switch_k: int = 0
    elapsed_s: float = 0.0
    phase1_intact: bool | None = None

    def merge(self, other: "TrialStats") -> None:
        self.edge_samples += other.edge_samples
        self.contractions += other.contractions
        self.branch_events += other.branch_events
        self.elapsed_s += other.elapsed_s


def _check_connected(g: WeightedGraph) -> None:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for u, v, _ in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    if comps != 1:
        raise GraphError("graph is disconnected")


def _ensure_recursion_depth(need: int) -> None:
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def karger_trial(g: WeightedGraph, rng) -> tuple[Cut, TrialStats]:
    """One Kruskal-style Karger run: contract in exponential-clock order.

    The bipartition in place just before the last two components would merge
    is returned as the candidate cut.
    """
    _check_connected(g)
    stats = TrialStats()
    start = time.perf_counter()
    _, _, ws = g.edge_arrays()
    order = exponential_clock_order(ws, rng)
    parent = list(range(g.n))
    comps = g.n
    edges = g.edges
    scanned = 0
    for e in order:
        scanned += 1
        u, v, _ = edges[e]
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u == v:
            continue
        parent[v] = u
        comps -= 1
        if comps == 2:
            break
    stats.edge_samples = scanned
    stats.contractions = g.n - comps

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    labels = np.fromiter((root(v) for v in range(g.n)), dtype=np.int64, count=g.n)
    side = frozenset(np.nonzero(labels == labels[0])[0].tolist())
    cut = cut_from_side(g, side)
    stats.elapsed_s = time.perf_counter() - start
    return cut, stats


class _Best:
    """Running minimum over visited leaf cuts; first hit wins ties."""

    __slots__ = ("weight", "side")

    def __init__(self):
        self.weight = math.inf
        self.side = None

    def offer(self, weight: float, side_factory) -> None:
        if weight < self.weight:
            self.weight = weight
            self.side = frozenset(side_factory())


class _DenseContractor:
    """Contracted simple graph as a dense symmetric weight matrix.

    Slots 0..k-1 are live; contraction merges a slot pair in O(k) and logs
    enough to undo it, so sibling recursion branches share the matrix.
    groups[i] lists the base-graph vertices inside metavertex i.
    """

    def __init__(self, n: int, weight_matrix: np.ndarray, groups):
        self.k = n
        self.W = weight_matrix
        self.s = weight_matrix.sum(axis=1)  # vertex strengths
        self.groups = list(groups)
        self._log = []

    @classmethod
    def from_graph(cls, g: WeightedGraph, groups=None):
        W = np.zeros((g.n, g.n))
        us, vs, ws = g.edge_arrays()
        np.add.at(W, (us, vs), ws)
        np.add.at(W, (vs, us), ws)
        if groups is None:
            groups = [[v] for v in range(g.n)]
        return cls(g.n, W, groups)

    def sample_pair(self, rng):
        """Draw a live vertex pair with probability proportional to weight."""
        k = self.k
        cs = np.cumsum(self.s[:k])
        i = int(np.searchsorted(cs, rng.random() * cs[-1], side="right"))
        i = min(i, k - 1)
        row = self.W[i, :k]
        cr = np.cumsum(row)
        j = int(np.searchsorted(cr, rng.random() * cr[-1], side="right"))
        j = min(j, k - 1)
        return i, j

    def contract(self, i: int, j: int) -> None:
        if i == j:
            raise GraphError("cannot contract a slot with itself")
        if i > j:
            i, j = j, i
        k = self.k
        last = k - 1
        self._log.append(
            (
                i,
                j,
                self.W[i, :k].copy(),
                self.W[j, :k].copy(),
                self.W[last, :k].copy(),
                self.s[i],
                self.s[j],
                self.s[last],
                self.groups[i],
                self.groups[j],
                self.groups[last],
            )
        )
        W = self.W
        W[i, :k] += W[j, :k]
        W[i, i] = 0.0
        W[:k, i] = W[i, :k]
        self.groups[i] = self.groups[i] + self.groups[j]
        if j != last:
            W[j, :k] = W[last, :k]
            W[:k, j] = W[j, :k]
            W[j, j] = 0.0
            self.s[j] = self.s[last]
            self.groups[j] = self.groups[last]
        self.groups.pop()
        self.k = k - 1
        self.s[i] = W[i, : self.k].sum()

    def checkpoint(self) -> int:
        return len(self._log)

    def rollback(self, mark: int) -> None:
        while len(self._log) > mark:
            i, j, ri, rj, rlast, si, sj, slast, gi, gj, glast = self._log.pop()
            self.k += 1
            k = self.k
            last = k - 1
            W = self.W
            W[last, :k] = rlast
            W[:k, last] = rlast
            W[j, :k] = rj
            W[:k, j] = rj
            W[i, :k] = ri
            W[:k, i] = ri
            self.s[i], self.s[j], self.s[last] = si, sj, slast
            self.groups.append(None)
            self.groups[last] = glast
            self.groups[j] = gj
            self.groups[i] = gi


def _fpz_recurse(dc: _DenseContractor, sched: QSchedule, rng, stats: TrialStats, best: _Best) -> None:
    k = dc.k
    if k == 2:
        best.offer(float(dc.W[0, 1]), lambda: dc.groups[0])
        return
    mark = dc.checkpoint()
    i, j = dc.sample_pair(rng)
    stats.edge_samples += 1
    dc.contract(i, j)
    stats.contractions += 1
    _fpz_recurse(dc, sched, rng, stats, best)
    take_first = rng.random() < sched.q(k)
    dc.rollback(mark)
    if not take_first:
        stats.branch_events += 1
        _fpz_recurse(dc, sched, rng, stats, best)


# schedule with B=1 reduces q(i) to 1-2/i at every size
_PLAIN_SCHEDULE = QSchedule(B=1.0, eta=0.0, rho=1.0, t=2)


def fpz(g: WeightedGraph, rng) -> tuple[Cut, TrialStats]:
    """Recursive single-contraction algorithm with probabilistic branching."""
    _check_connected(g)
    stats = TrialStats()
    start = time.perf_counter()
    _ensure_recursion_depth(20 * g.n + 1000)
    dc = _DenseContractor.from_graph(g)
    best = _Best()
    _fpz_recurse(dc, _PLAIN_SCHEDULE, rng, stats, best)
    cut = cut_from_side(g, best.side)
    stats.phase_switch_k = g.n
    stats.elapsed_s = time.perf_counter() - start
    return cut, stats


def _phase1_sample_live(sampler: PrefixWeightIndex, dsu: RollbackDSU, us, vs, rng, stats):
    """Sample a live boosted edge, lazily deleting already-merged draws."""
    while True:
        e = sampler.sample(rng)
        stats.edge_samples += 1
        u, v = us[e], vs[e]
        if dsu.find(u) != dsu.find(v):
            return e, u, v
        sampler.delete(e)


def boosted_karger_trial(
    g: WeightedGraph,
    pred,
    B: float,
    t: int,
    rng,
    watch_side=None,
) -> tuple[Cut, TrialStats]:
    """One two-phase boosted contraction trial.

    Phase 1 contracts edges sampled proportionally to the boosted weights
    w_B(e) = (1 + (B-1)(1-p_e)) w(e) until t metavertices remain; phase 2
    runs plain Karger contraction on the induced simple graph with the
    original weights. `watch_side` optionally records in the stats whether
    that reference cut survived phase 1.
    """
    if B < 1:
        raise ParameterError(f"B must be >= 1, got {B}")
    if t < 2:
        raise ParameterError(f"t must be >= 2, got {t}")
    _check_connected(g)
    stats = TrialStats()
    start = time.perf_counter()
    state = ContractionState(g)
    dsu = state.dsu
    us, vs, _ = g.edge_arrays()
    if t < g.n:
        sampler = PrefixWeightIndex(pred.boosted_weights(g, B))
        while dsu.components > t:
            e, u, v = _phase1_sample_live(sampler, dsu, us, vs, rng, stats)
            dsu.union(u, v)
            sampler.delete(e)
            stats.contractions += 1
    stats.phase_switch_k = dsu.components
    if watch_side is not None:
        labels = state.labels()
        inside = {int(labels[v]) for v in watch_side}
        outside = {int(labels[v]) for v in range(g.n) if v not in watch_side}
        stats.phase1_intact = not (inside & outside)
    sub, groups = induced_simple_graph(state)
    dc = _DenseContractor.from_graph(sub, groups=groups)
    while dc.k > 2:
        i, j = dc.sample_pair(rng)
        stats.edge_samples += 1
        dc.contract(i, j)
        stats.contractions += 1
    cut = cut_from_side(g, frozenset(dc.groups[0]))
    stats.elapsed_s = time.perf_counter() - start
    return cut, stats


def _boosted_fpz_recurse(g, dsu, sampler, us, vs, sched, rng, stats, best) -> None:
    k = dsu.components
    if k == 2:
        labels = np.fromiter((dsu.find(v) for v in range(g.n)), dtype=np.int64, count=g.n)
        weight = cut_weight_for_labels(g, labels)
        best.offer(weight, lambda: np.nonzero(labels == labels[0])[0].tolist())
        return
    if k <= sched.t:
        if stats.phase_switch_k == 0:
            stats.phase_switch_k = k
        sub, groups = induced_simple_graph(ContractionState(g, dsu=dsu))
        dc = _DenseContractor.from_graph(sub, groups=groups)
        _fpz_recurse(dc, _PLAIN_SCHEDULE, rng, stats, best)
        return
    dmark = dsu.checkpoint()
    smark = sampler.checkpoint()
    e, u, v = _phase1_sample_live(sampler, dsu, us, vs, rng, stats)
    dsu.union(u, v)
    sampler.delete(e)
    stats.contractions += 1
    _boosted_fpz_recurse(g, dsu, sampler, us, vs, sched, rng, stats, best)
    take_first = rng.random() < sched.q(k)
    sampler.rollback(smark)
    dsu.rollback(dmark)
    if not take_first:
        stats.branch_events += 1
        _boosted_fpz_recurse(g, dsu, sampler, us, vs, sched, rng, stats, best)


def boosted_fpz(
    g: WeightedGraph,
    pred,
    B: float,
    t: int,
    sched: QSchedule,
    rng,
) -> tuple[Cut, TrialStats]:
    """Boosted FPZ: boosted sampling with q-schedule branching above t live
    vertices, then plain FPZ with original weights on the pruned graph."""
    if B < 1:
        raise ParameterError(f"B must be >= 1, got {B}")
    if t < 2:
        raise ParameterError(f"t must be >= 2, got {t}")
    if sched.t != t or sched.B != B:
        raise ParameterError("schedule (B, t) must match the call parameters")
    _check_connected(g)
    stats = TrialStats()
    start = time.perf_counter()
    _ensure_recursion_depth(20 * g.n + 1000)
    dsu = RollbackDSU(g.n)
    us, vs, _ = g.edge_arrays()
    sampler = PrefixWeightIndex(pred.boosted_weights(g, B))
    best = _Best()
    _boosted_fpz_recurse(g, dsu, sampler, us, vs, sched, rng, stats, best)
    cut = cut_from_side(g, best.side)
    stats.elapsed_s = time.perf_counter() - start
    return cut, stats


NOT_FOUND = "NOT_FOUND"


@dataclass
class RepeatResult:
    trials: int | None  # 1-based index of the first success, None if not found
    best_cut: Cut
    stats: TrialStats = field(default_factory=TrialStats)


def repeat_until(trial_fn, target_weight: float, max_trials: int, seed) -> RepeatResult:
    """Run independent trials until one returns a cut at the target weight.

    Each trial gets an RNG substream derived from (seed, trial index), so the
    outcome is reproducible and trials could be distributed.
    """
    if max_trials < 1:
        raise ParameterError("max_trials must be >= 1")
    tol = abs(target_weight) * 1e-9 + 1e-12 if math.isfinite(target_weight) else 0.0
    total = TrialStats()
    best = None
    for idx in range(1, max_trials + 1):
        rng = np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, idx])
        cut, stats = trial_fn(rng)
        total.merge(stats)
        if best is None or cut.weight < best.weight:
            best = cut
        if cut.weight <= target_weight + tol:
            return RepeatResult(trials=idx, best_cut=best, stats=total)
    return RepeatResult(trials=None, best_cut=best, stats=total)
