"""Command-line entry point: gen / predict / cut / experiment / learn."""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import generators
from .exact import brute_force_min_cut, stoer_wagner
from .experiment import ExperimentConfig, run_experiment
from .graph import GraphError, read_graph_file, write_graph_file
from .learner import (
    LearnerConfig,
    contexts_from_graphs,
    learn,
    pilot_grid,
    vector_prediction,
)
from .predictions import (
    heuristic_predict,
    measure,
    read_prediction_file,
    synthesize,
    write_prediction_file,
)

USAGE_ERROR = 1
RUNTIME_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the CLI contract is 1
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cutboost", description="Prediction-boosted minimum cut toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an instance and write the graph file")
    p_gen.add_argument("--family", choices=["bipartite", "cycles", "dumbbell"], required=True)
    p_gen.add_argument("--n", type=int, help="vertex count (bipartite/cycles)")
    p_gen.add_argument("--k", type=int, help="matching/cycle count")
    p_gen.add_argument("--l", type=int, help="edges removed at vertex 0 (bipartite)")
    p_gen.add_argument("--eps", type=float, default=0.0, help="small-cycle fraction (cycles)")
    p_gen.add_argument("--clique-size", type=int, help="clique size (dumbbell)")
    p_gen.add_argument("--bridge-weight", type=float, default=1.0, help="bridge weight (dumbbell)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", required=True)

    p_pred = sub.add_parser("predict", help="synthesize, compute or measure predictions")
    pred_sub = p_pred.add_subparsers(dest="mode", required=True)
    p_synth = pred_sub.add_parser("synth", help="controlled-error prediction from the exact cut")
    p_synth.add_argument("--graph", required=True)
    p_synth.add_argument("--eta", type=float, required=True)
    p_synth.add_argument("--rho", type=float, required=True)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("-o", "--output", required=True)
    p_heur = pred_sub.add_parser("heuristic", help="union of contraction runs on half the edges")
    p_heur.add_argument("--graph", required=True)
    p_heur.add_argument("--k", type=int, default=None,
                        help="number of runs; defaults to the minimum degree")
    p_heur.add_argument("--seed", type=int, default=0)
    p_heur.add_argument("-o", "--output", required=True)
    p_meas = pred_sub.add_parser("measure", help="eta/rho of a prediction file")
    p_meas.add_argument("--graph", required=True)
    p_meas.add_argument("--pred", required=True)

    p_cut = sub.add_parser("cut", help="exact minimum cut of a graph file")
    p_cut.add_argument("--graph", required=True)
    p_cut.add_argument("--algo", choices=["stoer-wagner", "brute"], default="stoer-wagner")

    p_exp = sub.add_parser("experiment", help="run a trial-count experiment config")
    p_exp.add_argument("--config", required=True)
    p_exp.add_argument("-o", "--output", required=True)
    p_exp.add_argument("--threads", type=int, default=None)

    p_learn = sub.add_parser("learn", help="learn predictions from a directory of graphs")
    p_learn.add_argument("--samples", required=True, help="directory of graph files")
    p_learn.add_argument("--holdout", default=None,
                         help="directory of validation graphs (default: split by index parity)")
    p_learn.add_argument("--grid-points", type=int, default=20)
    p_learn.add_argument("--full-grid", action="store_true",
                         help="span the grid over [0, n(n-1)/2] instead of the pilot range")
    p_learn.add_argument("--c-min", type=float, default=1e-9)
    p_learn.add_argument("-o", "--output", required=True)
    p_learn.add_argument("--report", default=None, help="per-budget validation CSV")
    return parser


def _min_degree(g):
    deg = np.zeros(g.n)
    us, vs, ws = g.edge_arrays()
    np.add.at(deg, us, ws)
    np.add.at(deg, vs, ws)
    return max(1, int(deg.min()))


def _cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.family == "bipartite":
        g = generators.bipartite_matchings(args.n, args.k, args.l, rng)
    elif args.family == "cycles":
        g = generators.cycle_union(args.n, args.k, args.eps, rng)
    else:
        g = generators.dumbbell(args.clique_size, args.bridge_weight)
    write_graph_file(g, args.output)
    print(f"wrote {args.output} (n={g.n}, m={g.m})")
    return 0


def _cmd_predict(args) -> int:
    g = read_graph_file(args.graph)
    if args.mode == "measure":
        pred = read_prediction_file(args.pred)
        profile = measure(g, stoer_wagner(g), pred)
        print(f"eta={profile.eta!r} rho_raw={profile.rho_raw!r}")
        return 0
    rng = np.random.default_rng(args.seed)
    if args.mode == "synth":
        pred = synthesize(g, stoer_wagner(g), args.eta, args.rho, rng)
    else:
        k = args.k if args.k is not None else _min_degree(g)
        pred = heuristic_predict(g, k, rng)
    write_prediction_file(pred, args.output)
    print(f"wrote {args.output} ({len(pred)} pairs)")
    return 0


def _cmd_cut(args) -> int:
    g = read_graph_file(args.graph)
    cut = brute_force_min_cut(g) if args.algo == "brute" else stoer_wagner(g)
    print(f"weight={cut.weight!r}")
    print("side=" + " ".join(str(v) for v in sorted(cut.side)))
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_file(args.config)
    rows = run_experiment(cfg, out_path=args.output, threads=args.threads)
    print(f"wrote {args.output} ({len(rows)} rows)")
    return 0


def _read_graph_dir(path):
    files = sorted(
        f for f in os.listdir(path) if not f.startswith(".") and
        os.path.isfile(os.path.join(path, f))
    )
    if not files:
        raise GraphError(f"no graph files in {path}")
    return [read_graph_file(os.path.join(path, f)) for f in files]


def _cmd_learn(args) -> int:
    graphs = _read_graph_dir(args.samples)
    if args.holdout:
        train, val = graphs, _read_graph_dir(args.holdout)
    else:
        train = graphs[0::2]
        val = graphs[1::2] or train
    n = train[0].n
    if any(g.n != n for g in graphs):
        raise GraphError("all sample graphs must share one vertex set")
    if args.full_grid:
        grid = np.linspace(0.0, n * (n - 1) / 2, args.grid_points)
    else:
        grid = pilot_grid(train, points=args.grid_points)
    cfg = LearnerConfig(grid=grid, T=len(train), T_prime=len(val), c_min=args.c_min)
    # deterministic pass over the prepared samples, in file order
    train_iter = iter(train + val)
    result = learn(lambda _rng: next(train_iter), cfg, np.random.default_rng(0))
    write_prediction_file(vector_prediction(result.p_bar, n), args.output)
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["b", "mean_surrogate", "chosen"])
            for b, mean, chosen in result.validation_table:
                writer.writerow([repr(b), repr(mean), int(chosen)])
    print(f"chosen_b={result.b_chosen!r}")
    print(f"wrote {args.output}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "gen": _cmd_gen,
        "predict": _cmd_predict,
        "cut": _cmd_cut,
        "experiment": _cmd_experiment,
        "learn": _cmd_learn,
    }
    try:
        return handlers[args.command](args)
    except Exception as exc:  # runtime failures map to exit code 2
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
