"""Experiment orchestration: config validation, trial-count sweeps, CSV output."""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import generators
from .contraction import (
    NOT_FOUND,
    QSchedule,
    boosted_fpz,
    boosted_karger_trial,
    default_boosted_fpz_params,
    default_boosted_karger_params,
    fpz,
    karger_trial,
    repeat_until,
)
from .exact import brute_force_min_cut, stoer_wagner
from .graph import cut_from_side, read_graph_file, weights_match
from .predictions import (
    heuristic_predict,
    measure,
    read_prediction_file,
    synthesize,
    perfect_prediction,
)

CSV_HEADER = [
    "instance", "algo", "eta_target", "eta", "rho_target", "rho_raw", "B", "t",
    "seed", "trial_count", "found_weight", "true_weight", "edge_samples",
    "contractions", "branch_events", "elapsed_ms",
]

PLAIN_ALGOS = ("karger", "fpz")
BOOSTED_ALGOS = ("boosted-karger", "boosted-fpz")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    instance: dict
    algorithms: list
    predictions: dict
    repetitions: int
    max_trials: int
    seed: int
    B: float | None = None
    t: int | None = None
    schedule: dict | None = None
    instance_seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        cfg = cls(
            instance=data.get("instance"),
            algorithms=list(data.get("algorithms", [])),
            predictions=data.get("predictions", {"type": "perfect"}),
            repetitions=int(data.get("repetitions", 1)),
            max_trials=int(data.get("max_trials", 1000)),
            seed=int(data.get("seed", 0)),
            B=data.get("B"),
            t=data.get("t"),
            schedule=data.get("schedule"),
            instance_seed=int(data.get("instance_seed", 0)),
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def validate(self) -> None:
        if not isinstance(self.instance, dict):
            raise ConfigError("config needs an 'instance' section")
        if "file" in self.instance:
            if not os.path.exists(self.instance["file"]):
                raise ConfigError(f"graph file not found: {self.instance['file']}")
        elif self.instance.get("family") not in ("bipartite", "cycles", "dumbbell"):
            raise ConfigError(f"unknown instance family: {self.instance.get('family')}")
        for algo in self.algorithms:
            if algo not in PLAIN_ALGOS + BOOSTED_ALGOS:
                raise ConfigError(f"unknown algorithm: {algo}")
        if not self.algorithms:
            raise ConfigError("no algorithms requested")
        ptype = self.predictions.get("type")
        if ptype not in ("synth", "heuristic", "file", "perfect"):
            raise ConfigError(f"unknown prediction type: {ptype}")
        if ptype == "file" and not os.path.exists(self.predictions.get("path", "")):
            raise ConfigError(f"prediction file not found: {self.predictions.get('path')}")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.max_trials < 1:
            raise ConfigError("max_trials must be >= 1")


def load_instance(cfg: ExperimentConfig):
    """Returns (instance id string, WeightedGraph)."""
    spec = cfg.instance
    if "file" in spec:
        return os.path.basename(spec["file"]), read_graph_file(spec["file"])
    rng = np.random.default_rng(cfg.instance_seed)
    family = spec["family"]
    if family == "bipartite":
        n, k, l = int(spec["n"]), int(spec["k"]), int(spec["l"])
        return f"bipartite(n={n},k={k},l={l})", generators.bipartite_matchings(n, k, l, rng)
    if family == "cycles":
        n, k, eps = int(spec["n"]), int(spec["k"]), float(spec["eps"])
        return f"cycles(n={n},k={k},eps={eps})", generators.cycle_union(n, k, eps, rng)
    c, bw = int(spec["clique_size"]), float(spec["bridge_weight"])
    return f"dumbbell(c={c},w={bw})", generators.dumbbell(c, bw)


def ground_truth(g):
    """Stoer-Wagner weight, cross-checked against brute force on tiny graphs."""
    cut = stoer_wagner(g)
    if g.n <= 12:
        ref = brute_force_min_cut(g)
        if not weights_match(cut.weight, ref.weight):
            raise ConfigError(
                f"oracle mismatch: stoer_wagner={cut.weight} brute={ref.weight}"
            )
    return cut


def _cells(cfg: ExperimentConfig):
    """Deterministic cell list: (algo, eta_target or None, rho_target or None)."""
    cells = []
    for algo in cfg.algorithms:
        if algo in PLAIN_ALGOS:
            cells.append((algo, None, None))
        elif cfg.predictions["type"] == "synth":
            for rho in cfg.predictions.get("rho", [0.0]):
                for eta in cfg.predictions.get("eta", [0.0]):
                    cells.append((algo, float(eta), float(rho)))
        else:
            cells.append((algo, None, None))
    return cells


def _build_prediction(cfg, g, true_cut, eta_t, rho_t, rng):
    ptype = cfg.predictions["type"]
    if ptype == "synth":
        return synthesize(g, true_cut, eta_t, rho_t, rng)
    if ptype == "heuristic":
        return heuristic_predict(g, int(cfg.predictions.get("k", 1)), rng)
    if ptype == "file":
        return read_prediction_file(cfg.predictions["path"])
    return perfect_prediction(g, true_cut)


def _run_cell_rep(cfg, instance_id, g, true_cut, cell, cell_idx, rep):
    algo, eta_t, rho_t = cell
    ss = np.random.SeedSequence([cfg.seed, cell_idx, rep])
    synth_ss, trial_ss = ss.spawn(2)
    trial_seed = int(trial_ss.generate_state(1, dtype=np.uint64)[0])
    row = {
        "instance": instance_id,
        "algo": algo,
        "eta_target": "" if eta_t is None else repr(eta_t),
        "rho_target": "" if rho_t is None else repr(rho_t),
        "eta": "",
        "rho_raw": "",
        "B": "",
        "t": "",
        "seed": str(trial_seed),
        "true_weight": repr(true_cut.weight),
    }
    if algo == "karger":
        trial_fn = lambda rng: karger_trial(g, rng)  # noqa: E731
    elif algo == "fpz":
        trial_fn = lambda rng: fpz(g, rng)  # noqa: E731
    else:
        pred = _build_prediction(
            cfg, g, true_cut, eta_t, rho_t, np.random.default_rng(synth_ss)
        )
        profile = measure(g, true_cut, pred)
        row["eta"] = repr(profile.eta)
        row["rho_raw"] = repr(profile.rho_raw)
        if algo == "boosted-karger":
            B, t = default_boosted_karger_params(g)
        else:
            B, t = default_boosted_fpz_params(g)
        B = float(cfg.B if cfg.B is not None else B)
        t = int(cfg.t if cfg.t is not None else t)
        row["B"], row["t"] = repr(B), str(t)
        if algo == "boosted-karger":
            trial_fn = lambda rng: boosted_karger_trial(g, pred, B, t, rng)  # noqa: E731
        else:
            s_over = cfg.schedule or {}
            sched = QSchedule.clamped(
                B=B,
                eta=float(s_over.get("eta", 0.0)),
                rho=float(s_over.get("rho", 1.0)),
                t=t,
            )
            trial_fn = lambda rng: boosted_fpz(g, pred, B, t, sched, rng)  # noqa: E731
    result = repeat_until(trial_fn, true_cut.weight, cfg.max_trials, trial_seed)
    best = result.best_cut
    recomputed = cut_from_side(g, best.side)
    if not weights_match(recomputed.weight, best.weight):
        raise ConfigError("returned cut failed recomputation check")
    row["trial_count"] = NOT_FOUND if result.trials is None else str(result.trials)
    row["found_weight"] = repr(best.weight)
    row["edge_samples"] = str(result.stats.edge_samples)
    row["contractions"] = str(result.stats.contractions)
    row["branch_events"] = str(result.stats.branch_events)
    row["elapsed_ms"] = repr(result.stats.elapsed_s * 1000.0)
    return row


def run_experiment(cfg: ExperimentConfig, out_path=None, threads: int | None = None):
    """Run every (cell, repetition) and return rows; optionally write CSV.

    Deterministic given the master seed: cells own derived seed streams and
    the output is serialized in cell order regardless of completion order.
    """
    instance_id, g = load_instance(cfg)
    true_cut = ground_truth(g)
    cells = _cells(cfg)
    jobs = [
        (cell, ci, rep)
        for ci, cell in enumerate(cells)
        for rep in range(cfg.repetitions)
    ]
    if threads is None:
        threads = int(os.environ.get("CUTBOOST_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(
                    lambda job: _run_cell_rep(cfg, instance_id, g, true_cut, *job),
                    jobs,
                )
            )
    else:
        rows = [_run_cell_rep(cfg, instance_id, g, true_cut, *job) for job in jobs]
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
