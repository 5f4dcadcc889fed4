"""Charts from experiment CSVs: trial-count vs eta sweeps and
instances-solved-within-budget curves.

The tool is a pure CSV consumer; it never recomputes algorithmic
quantities. Unsolved rows carry the sentinel trial count NOT_FOUND and
are aggregated at the trial cap.
"""

from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

REQUIRED_COLUMNS = [
    "instance", "algo", "eta_target", "eta", "rho_target", "rho_raw", "B", "t",
    "seed", "trial_count", "found_weight", "true_weight", "edge_samples",
    "contractions", "branch_events", "elapsed_ms",
]

NOT_FOUND = "NOT_FOUND"
PLAIN_ALGOS = ("karger", "fpz")


class CsvError(ValueError):
    pass


def load_rows(path) -> list:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise CsvError(f"{path} is empty")
        missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise CsvError(f"{path} is missing columns: {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise CsvError(f"{path} has a header but no rows")
    return rows


def trial_cap(rows, max_trials=None) -> float:
    """Value substituted for NOT_FOUND rows; defaults to the largest
    numeric trial count present."""
    if max_trials is not None:
        return float(max_trials)
    numeric = [float(r["trial_count"]) for r in rows if r["trial_count"] != NOT_FOUND]
    return max(numeric) if numeric else 1.0


def trial_value(row, cap: float) -> float:
    if row["trial_count"] == NOT_FOUND:
        return cap
    return float(row["trial_count"])


def eta_stats(rows, cap: float) -> list:
    """Per-(algo, rho, eta) medians and quartiles of the trial counts.

    Plain-algorithm rows have empty targets and aggregate into one group
    per algorithm with blank rho/eta fields.
    """
    groups = {}
    for row in rows:
        key = (row["algo"], row["rho_target"], row["eta_target"])
        groups.setdefault(key, []).append(row)
    table = []
    for (algo, rho, eta) in sorted(groups):
        bucket = groups[(algo, rho, eta)]
        values = np.array([trial_value(r, cap) for r in bucket])
        table.append(
            {
                "algo": algo,
                "rho_target": rho,
                "eta_target": eta,
                "count": len(values),
                "not_found": sum(r["trial_count"] == NOT_FOUND for r in bucket),
                "q1": float(np.percentile(values, 25)),
                "median": float(np.median(values)),
                "q3": float(np.percentile(values, 75)),
            }
        )
    return table


def solved_stats(rows, cap: float) -> dict:
    """Per algorithm: sorted trial budgets and cumulative solved counts.

    NOT_FOUND rows never count as solved and only extend the x range."""
    out = {}
    for algo in sorted({r["algo"] for r in rows}):
        solved = sorted(
            float(r["trial_count"])
            for r in rows
            if r["algo"] == algo and r["trial_count"] != NOT_FOUND
        )
        budgets = []
        counts = []
        for i, budget in enumerate(solved, start=1):
            budgets.append(budget)
            counts.append(i)
        out[algo] = {"budgets": budgets, "solved": counts, "total": sum(
            r["algo"] == algo for r in rows
        )}
    return out


def plot_eta_sweep(csv_path, out_path, max_trials=None) -> list:
    """One panel per rho value: median trial count vs eta with
    interquartile shading; plain Karger as a horizontal band."""
    rows = load_rows(csv_path)
    cap = trial_cap(rows, max_trials)
    table = eta_stats(rows, cap)
    boosted = [t for t in table if t["rho_target"] != ""]
    rhos = sorted({t["rho_target"] for t in boosted}, key=float)
    if not rhos:
        raise CsvError("no prediction sweep rows (rho_target is empty everywhere)")
    baseline = [t for t in table if t["algo"] in PLAIN_ALGOS]
    fig, axes = plt.subplots(
        1, len(rhos), figsize=(4.2 * len(rhos), 3.4), sharey=True, squeeze=False
    )
    for ax, rho in zip(axes[0], rhos):
        for algo in sorted({t["algo"] for t in boosted}):
            curve = [
                t for t in boosted if t["algo"] == algo and t["rho_target"] == rho
            ]
            curve.sort(key=lambda t: float(t["eta_target"]))
            if not curve:
                continue
            etas = [float(t["eta_target"]) for t in curve]
            med = [t["median"] for t in curve]
            ax.plot(etas, med, marker="o", label=algo)
            ax.fill_between(
                etas, [t["q1"] for t in curve], [t["q3"] for t in curve], alpha=0.25
            )
            capped = [
                (float(t["eta_target"]), t["median"])
                for t in curve
                if t["not_found"] > 0
            ]
            if capped:
                ax.scatter(
                    [c[0] for c in capped], [c[1] for c in capped],
                    marker="x", color="red", zorder=5, label="hit trial cap",
                )
        for t in baseline:
            ax.axhspan(t["q1"], t["q3"], color="gray", alpha=0.2)
            ax.axhline(t["median"], color="gray", linestyle="--", linewidth=1,
                       label=f"{t['algo']} baseline")
        ax.set_yscale("log")
        ax.set_xlabel(r"$\eta$")
        ax.set_title(rf"$\rho={rho}$")
    axes[0][0].set_ylabel("trials to minimum cut")
    handles, labels = axes[0][0].get_legend_handles_labels()
    seen = dict(zip(labels, handles))
    axes[0][0].legend(seen.values(), seen.keys(), fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return table


def plot_solved_within(csv_path, out_path, max_trials=None) -> dict:
    """Cumulative instances solved vs trial budget, one curve per algorithm."""
    rows = load_rows(csv_path)
    cap = trial_cap(rows, max_trials)
    curves = solved_stats(rows, cap)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for algo, curve in curves.items():
        xs = [1.0] + curve["budgets"] + [cap]
        ys = [0] + curve["solved"] + [curve["solved"][-1] if curve["solved"] else 0]
        ax.step(xs, ys, where="post", label=algo)
    ax.set_xscale("log")
    ax.set_xlabel("trial budget")
    ax.set_ylabel("instances solved")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return curves


def dump_eta_stats(table, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(
        ["algo", "rho_target", "eta_target", "count", "not_found", "q1", "median", "q3"]
    )
    for row in table:
        writer.writerow(
            [
                row["algo"], row["rho_target"], row["eta_target"], row["count"],
                row["not_found"], repr(row["q1"]), repr(row["median"]), repr(row["q3"]),
            ]
        )


def dump_solved_stats(curves, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(["algo", "budget", "solved", "total"])
    for algo, curve in curves.items():
        for budget, solved in zip(curve["budgets"], curve["solved"]):
            writer.writerow([algo, repr(budget), solved, curve["total"]])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot.py", description="Render experiment CSVs as figures"
    )
    parser.add_argument("csv", help="experiment CSV file")
    parser.add_argument("-o", "--output", required=True, help="figure file (vector format)")
    parser.add_argument("--style", choices=["eta", "solved"], default="eta")
    parser.add_argument("--max-trials", type=float, default=None,
                        help="trial cap substituted for NOT_FOUND rows")
    parser.add_argument("--dump-stats", action="store_true",
                        help="write the aggregated table to stdout")
    args = parser.parse_args(argv)
    try:
        if args.style == "eta":
            table = plot_eta_sweep(args.csv, args.output, args.max_trials)
            if args.dump_stats:
                dump_eta_stats(table, sys.stdout)
        else:
            curves = plot_solved_within(args.csv, args.output, args.max_trials)
            if args.dump_stats:
                dump_solved_stats(curves, sys.stdout)
    except (CsvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
