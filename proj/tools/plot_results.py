#!/usr/bin/env python3
"""Render optional PNGs from dcsched CSV outputs.

The CSVs are the source of truth; this script only visualizes them. Usage:

    plot_results.py plan <plan_dir> [--samples samples.csv] [--out dir]
    plot_results.py sweep <sweep_dir> [--out dir]
    plot_results.py compare <compare_dir> [--out dir]
"""

import argparse
import csv
import os
import sys

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib is required for plotting (CSV outputs are complete without it)")


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def load_vcc(plan_dir):
    rows = read_csv(os.path.join(plan_dir, "vcc.csv"))
    T = max(int(r["t"]) for r in rows)
    D = max(int(r["d"]) for r in rows)
    vcc = [[0.0] * T for _ in range(D)]
    for r in rows:
        vcc[int(r["d"]) - 1][int(r["t"]) - 1] = float(r["value"])
    return vcc, T, D


def load_schedule(plan_dir):
    rows = read_csv(os.path.join(plan_dir, "schedule.csv"))
    K = max(int(r["k"]) for r in rows)
    T = max(int(r["t"]) for r in rows)
    return rows, K, T


def load_samples(path):
    rows = read_csv(path)
    samples = {}
    for r in rows:
        samples.setdefault(int(r["sample_id"]), {})[(int(r["k"]), int(r["c"]))] = float(
            r["value"]
        )
    return samples


def plot_plan(plan_dir, samples_path, out_dir):
    vcc, T, D = load_vcc(plan_dir)
    rows, K, _ = load_schedule(plan_dir)

    fig, axes = plt.subplots(1, D, figsize=(4 * D, 3), sharey=True)
    axes = [axes] if D == 1 else list(axes)
    if samples_path:
        samples = load_samples(samples_path)
        for d in range(1, D + 1):
            for sid, cells in samples.items():
                load = [0.0] * T
                for r in rows:
                    if int(r["d"]) != d:
                        continue
                    k, c, t = int(r["k"]), int(r["c"]), int(r["t"])
                    load[t - 1] += float(r["value"]) * cells.get((k, c), 0.0)
                axes[d - 1].plot(range(1, T + 1), load, color="gray", alpha=0.4, lw=0.8)
    for d in range(1, D + 1):
        axes[d - 1].step(range(1, T + 1), vcc[d - 1], where="mid", color="tab:red", lw=1.6)
        axes[d - 1].set_title(f"cluster {d}")
        axes[d - 1].set_xlabel("hour t")
    axes[0].set_ylabel("load / VCC")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "load_vs_vcc.png"), dpi=150)

    # Heatmap of the schedule for cluster 1, summed over classes.
    heat = [[0.0] * T for _ in range(K)]
    for r in rows:
        if int(r["d"]) == 1:
            heat[int(r["k"]) - 1][int(r["t"]) - 1] += float(r["value"])
    fig2, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(heat, aspect="auto", origin="lower", cmap="viridis",
                   extent=[0.5, T + 0.5, 0.5, K + 0.5])
    ax.set_xlabel("execution hour t")
    ax.set_ylabel("submission hour k")
    fig2.colorbar(im, ax=ax, label="fraction")
    fig2.tight_layout()
    fig2.savefig(os.path.join(out_dir, "schedule_heatmap.png"), dpi=150)


def plot_sweep(sweep_dir, out_dir):
    rows = read_csv(os.path.join(sweep_dir, "sweep.csv"))
    param = list(rows[0].keys())[0]
    xs = [float(r[param]) for r in rows]
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(8, 3))
    a1.plot(xs, [float(r["objective"]) for r in rows], "o-")
    a1.set_xlabel(param)
    a1.set_ylabel("objective")
    a2.plot(xs, [int(r["violation_count"]) for r in rows], "s-", color="tab:orange")
    a2.set_xlabel(param)
    a2.set_ylabel("validation violations")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, f"sweep_{param}.png"), dpi=150)


def plot_compare(compare_dir, out_dir):
    rows = read_csv(os.path.join(compare_dir, "comparison.csv"))
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.boxplot(
        [[float(r["dro_pct"]) for r in rows], [float(r["greedy_pct"]) for r in rows]],
        labels=["tracking", "greedy"],
    )
    ax.set_ylabel("% cost increase over oracle")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "compare_boxplot.png"), dpi=150)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("kind", choices=["plan", "sweep", "compare"])
    parser.add_argument("directory")
    parser.add_argument("--samples", default=None, help="overlay sample loads (plan only)")
    parser.add_argument("--out", default=None, help="output directory (default: input dir)")
    args = parser.parse_args()

    out_dir = args.out or args.directory
    os.makedirs(out_dir, exist_ok=True)
    if args.kind == "plan":
        plot_plan(args.directory, args.samples, out_dir)
    elif args.kind == "sweep":
        plot_sweep(args.directory, out_dir)
    else:
        plot_compare(args.directory, out_dir)
    print(f"wrote plots to {out_dir}")


if __name__ == "__main__":
    main()
