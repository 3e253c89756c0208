"""Renders the plausibility curves and the IM/Bayes quantile plot from CLI output.

Usage: python3 tools/plot_figures.py [--cli build/tools/iminfer] [--out figures]
"""
import argparse
import csv
import io
import pathlib
import subprocess

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]


def run_csv(cli, *args):
    out = subprocess.run([cli, *args], check=True, capture_output=True, text=True).stdout
    rows = list(csv.reader(io.StringIO(out)))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


def plot_curves(cli, out):
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    for ax, name, title in zip(axes, ["cv_mu1_n30.csv", "cv_mu0_n30.csv"], ["mu = 1", "mu = 0"]):
        _, rows = run_csv(cli, "curve", "--model", "normal-cv", "--data", str(ROOT / "data" / name),
                          "--theta-grid", "-20:20:2001")
        ax.plot([r[0] for r in rows], [r[1] for r in rows], color="black", lw=1)
        ax.axhline(0.05, color="grey", ls="--", lw=0.8)
        ax.set(title=title, xlabel="theta", ylabel="plausibility", ylim=(0, 1.02))
    fig.tight_layout()
    fig.savefig(out / "plausibility_curves.png", dpi=150)


def plot_quantiles(cli, out, reps, draws):
    _, rows = run_csv(cli, "compare", "--reps", str(reps), "--posterior-draws", str(draws))
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    q = [r[0] for r in rows]
    ax.plot(q, [r[1] for r in rows], color="black", label="IM belief")
    ax.plot(q, [r[2] for r in rows], color="grey", ls="--", label="Bayes posterior")
    ax.plot([0, 1], [0, 1], color="black", lw=0.5)
    ax.set(xlabel="uniform quantile", ylabel="sample quantile", xlim=(0, 1), ylim=(0, 1))
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(out / "quantile_plot.png", dpi=150)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", default=str(ROOT / "build" / "tools" / "iminfer"))
    parser.add_argument("--out", default="figures")
    parser.add_argument("--reps", type=int, default=1000)
    parser.add_argument("--posterior-draws", type=int, default=100000)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    plot_curves(args.cli, out)
    plot_quantiles(args.cli, out, args.reps, args.posterior_draws)


if __name__ == "__main__":
    main()
