import csv
import json
import math

import pytest

from cutboost import CSV_HEADER, ConfigError, ExperimentConfig, run_experiment
from cutboost.cli import main
from cutboost.experiment import write_csv
from cutboost.graph import read_graph_file
from cutboost.predictions import read_prediction_file

GOLDEN_HEADER = (
    "instance,algo,eta_target,eta,rho_target,rho_raw,B,t,seed,trial_count,"
    "found_weight,true_weight,edge_samples,contractions,branch_events,elapsed_ms"
)


def dumbbell_config(**over):
    data = {
        "instance": {"family": "dumbbell", "clique_size": 4, "bridge_weight": 1.0},
        "algorithms": ["karger", "boosted-karger"],
        "predictions": {"type": "synth", "eta": [0.0], "rho": [0.0]},
        "repetitions": 2,
        "max_trials": 200,
        "seed": 11,
    }
    data.update(over)
    return data


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_csv_header_golden():
    assert ",".join(CSV_HEADER) == GOLDEN_HEADER


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown config keys"):
        ExperimentConfig.from_dict(dumbbell_config(bogus=1))


def test_config_rejects_bad_values():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(dumbbell_config(algorithms=["quantum"]))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(dumbbell_config(algorithms=[]))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(dumbbell_config(repetitions=0))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(
            dumbbell_config(predictions={"type": "astrology"})
        )
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(
            dumbbell_config(instance={"family": "hypercube"})
        )


def test_run_experiment_rows(tmp_path):
    cfg = ExperimentConfig.from_dict(dumbbell_config())
    out = tmp_path / "rows.csv"
    rows = run_experiment(cfg, out_path=out)
    # one plain cell + one (eta, rho) cell, two repetitions each
    assert len(rows) == 4
    file_rows = read_rows(out)
    assert [r["algo"] for r in file_rows] == [
        "karger", "karger", "boosted-karger", "boosted-karger"
    ]
    for row in file_rows:
        assert row["instance"] == "dumbbell(c=4,w=1.0)"
        assert float(row["true_weight"]) == 1.0
        assert row["trial_count"] == "NOT_FOUND" or int(row["trial_count"]) >= 1
        assert int(row["edge_samples"]) > 0
        assert float(row["elapsed_ms"]) >= 0.0
    boosted = file_rows[2]
    assert float(boosted["eta_target"]) == 0.0
    assert float(boosted["eta"]) == 0.0
    assert float(boosted["B"]) >= 2 and int(boosted["t"]) == 2


def test_run_experiment_deterministic(tmp_path):
    cfg = ExperimentConfig.from_dict(dumbbell_config())
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    drop = {"elapsed_ms"}
    for ra, rb in zip(a, b):
        assert {k: v for k, v in ra.items() if k not in drop} == {
            k: v for k, v in rb.items() if k not in drop
        }


def test_run_experiment_threads_match_serial():
    cfg = ExperimentConfig.from_dict(dumbbell_config())
    serial = run_experiment(cfg, threads=1)
    parallel = run_experiment(cfg, threads=4)
    drop = {"elapsed_ms"}
    for ra, rb in zip(serial, parallel):
        assert {k: v for k, v in ra.items() if k not in drop} == {
            k: v for k, v in rb.items() if k not in drop
        }


def test_run_experiment_synth_grid(tmp_path):
    cfg = ExperimentConfig.from_dict(
        dumbbell_config(
            algorithms=["boosted-karger"],
            predictions={"type": "synth", "eta": [0.0, 0.5], "rho": [0.0, 1.0]},
            repetitions=1,
        )
    )
    rows = run_experiment(cfg)
    assert len(rows) == 4
    combos = {(r["eta_target"], r["rho_target"]) for r in rows}
    assert len(combos) == 4


def test_run_experiment_boosted_fpz_schedule():
    cfg = ExperimentConfig.from_dict(
        dumbbell_config(
            algorithms=["boosted-fpz"],
            predictions={"type": "perfect"},
            repetitions=1,
            B=8.0,
            t=4,
            schedule={"eta": 0.0, "rho": 0.0},  # rho clamps up to 1
        )
    )
    rows = run_experiment(cfg)
    assert len(rows) == 1
    assert rows[0]["trial_count"] != "NOT_FOUND"
    assert float(rows[0]["B"]) == 8.0 and rows[0]["t"] == "4"


def test_cli_gen_and_cut(tmp_path, capsys):
    path = tmp_path / "g.txt"
    rc = main(
        [
            "gen", "--family", "dumbbell", "--clique-size", "4",
            "--bridge-weight", "1.0", "-o", str(path),
        ]
    )
    assert rc == 0
    g = read_graph_file(path)
    assert g.n == 8
    rc = main(["cut", "--graph", str(path), "--algo", "brute"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "weight=1.0" in out
    side_line = [l for l in out.splitlines() if l.startswith("side=")][0]
    assert len(side_line.split("=")[1].split()) == 4


def test_cli_predict_synth_and_measure(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    ppath = tmp_path / "p.txt"
    main(
        [
            "gen", "--family", "dumbbell", "--clique-size", "4",
            "--bridge-weight", "1.0", "-o", str(gpath),
        ]
    )
    rc = main(
        [
            "predict", "synth", "--graph", str(gpath), "--eta", "0.0",
            "--rho", "0.0", "-o", str(ppath),
        ]
    )
    assert rc == 0
    pred = read_prediction_file(ppath)
    assert pred.get(0, 4) == 1.0  # the bridge
    rc = main(["predict", "measure", "--graph", str(gpath), "--pred", str(ppath)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "eta=0.0" in out and "rho_raw=0.0" in out


def test_cli_predict_heuristic(tmp_path):
    gpath = tmp_path / "g.txt"
    ppath = tmp_path / "p.txt"
    main(
        [
            "gen", "--family", "bipartite", "--n", "12", "--k", "4", "--l", "2",
            "--seed", "3", "-o", str(gpath),
        ]
    )
    rc = main(["predict", "heuristic", "--graph", str(gpath), "-o", str(ppath)])
    assert rc == 0
    assert len(read_prediction_file(ppath)) > 0


def test_cli_experiment(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    out_path = tmp_path / "rows.csv"
    cfg_path.write_text(json.dumps(dumbbell_config()))
    rc = main(["experiment", "--config", str(cfg_path), "-o", str(out_path)])
    assert rc == 0
    rows = read_rows(out_path)
    assert len(rows) == 4


def test_cli_learn(tmp_path, capsys):
    graph_dir = tmp_path / "samples"
    graph_dir.mkdir()
    for i in range(6):
        main(
            [
                "gen", "--family", "dumbbell", "--clique-size", "4",
                "--bridge-weight", "1.0", "-o", str(graph_dir / f"g{i}.txt"),
            ]
        )
    out = tmp_path / "learned.txt"
    report = tmp_path / "report.csv"
    rc = main(
        [
            "learn", "--samples", str(graph_dir), "-o", str(out),
            "--report", str(report), "--grid-points", "5",
        ]
    )
    assert rc == 0
    assert out.exists()
    with open(report, newline="") as fh:
        table = list(csv.DictReader(fh))
    assert len(table) == 5
    assert sum(int(r["chosen"]) for r in table) == 1
    assert all(math.isfinite(float(r["mean_surrogate"])) for r in table)


def test_cli_usage_error_exit_code():
    assert main(["gen", "--family", "nosuch", "-o", "/tmp/x"]) == 1
    assert main(["cut"]) == 1


def test_cli_runtime_error_exit_code(tmp_path, capsys):
    missing = str(tmp_path / "missing.txt")
    assert main(["cut", "--graph", missing]) == 2
    err = capsys.readouterr().err
    assert "error:" in err


def test_write_csv_roundtrip(tmp_path):
    row = {k: "0" for k in CSV_HEADER}
    path = tmp_path / "one.csv"
    write_csv([row], path)
    assert read_rows(path) == [row]
