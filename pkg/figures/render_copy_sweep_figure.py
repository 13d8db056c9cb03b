#!/usr/bin/env python3
"""Mean copy-count curve from a copy-sweep CSV.

Usage: figures/render_copy_sweep_figure.py <csv> <out.png> [--x beta]

Plots mean labeled copies of the target complex against beta (or n), with a
vertical marker at the predicted appearance threshold read from the summary
sidecar.
"""

import argparse
import sys
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import figlib


def render_copy_sweep_figure(spec: figlib.FigureSpec) -> None:
    header, rows = figlib.read_csv(spec.csv_path)
    figlib.require_columns(header, [spec.x_column, *spec.y_columns], spec.csv_path)
    sidecar = figlib.read_sidecar(spec.csv_path)

    fig, ax = plt.subplots(figsize=(6, 4))
    for col in spec.y_columns:
        series = figlib.group_mean(rows, spec.x_column, col)
        xs = [float(k) for k, _ in series]
        ys = [v for _, v in series]
        ax.plot(xs, ys, marker="o", label=f"mean {col}")
    for label, value in spec.reference_lines.items():
        ax.axvline(value, linestyle="--", color="gray")
        ax.annotate(label, xy=(value, ax.get_ylim()[1]), fontsize=7, rotation=90)
    ax.set_xlabel(spec.x_column)
    ax.set_ylabel("labeled copies")
    ax.legend(fontsize=8)
    fig.tight_layout(rect=(0, 0.04, 1, 1))
    figlib.save_figure(fig, spec, figlib.config_echo(sidecar))
    plt.close(fig)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("output")
    ap.add_argument("--x", default="beta")
    args = ap.parse_args(argv)

    sidecar = figlib.read_sidecar(args.csv)
    refs = {}
    if args.x == "beta":
        for m, value in sidecar.get("predicted_thresholds", {}).items():
            refs[f"b_m (m={m})"] = float(Fraction(value))
    spec = figlib.FigureSpec(args.csv, args.x, ["copies"], args.output, refs)
    try:
        render_copy_sweep_figure(spec)
    except (figlib.MissingColumnError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
