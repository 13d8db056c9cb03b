#!/usr/bin/env python3
"""Proportion-of-faces curve from a support-census CSV.

Usage: figures/render_support_figure.py <csv> <out.png> [--x n] [--y ratio_at ...]

Draws the mean of each requested ratio column against the x column, with a
horizontal reference line at the predicted face probability q read from the
summary sidecar.
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import figlib


def render_support_figure(spec: figlib.FigureSpec) -> None:
    header, rows = figlib.read_csv(spec.csv_path)
    figlib.require_columns(header, [spec.x_column, *spec.y_columns], spec.csv_path)
    sidecar = figlib.read_sidecar(spec.csv_path)

    fig, ax = plt.subplots(figsize=(6, 4))
    for col in spec.y_columns:
        series = figlib.group_mean(rows, spec.x_column, col)
        ax.plot(
            [float(k) for k, _ in series],
            [v for _, v in series],
            marker="o",
            label=col,
        )
    for label, value in spec.reference_lines.items():
        ax.axhline(value, linestyle="--", color="gray", label=label)
    ax.set_xlabel(spec.x_column)
    ax.set_ylabel("proportion of faces")
    ax.legend(fontsize=8)
    fig.tight_layout(rect=(0, 0.04, 1, 1))
    figlib.save_figure(fig, spec, figlib.config_echo(sidecar))
    plt.close(fig)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("output")
    ap.add_argument("--x", default="n")
    ap.add_argument("--y", nargs="+", default=["ratio_at"])
    args = ap.parse_args(argv)

    sidecar = figlib.read_sidecar(args.csv)
    refs = {}
    for point in sidecar.get("summary", []):
        if "q_face" in point:
            refs[f"q (m={point.get('m')})"] = point["q_face"]
    spec = figlib.FigureSpec(args.csv, args.x, list(args.y), args.output, refs)
    try:
        render_support_figure(spec)
    except (figlib.MissingColumnError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
