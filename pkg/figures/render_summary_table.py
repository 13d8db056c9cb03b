#!/usr/bin/env python3
"""Markdown summary table from a support-census CSV.

Usage: figures/render_summary_table.py <csv> [out.md]

One column per m value; rows: t, mean face counts below/at/above cardinality
t, the corresponding ratios (3 significant figures), and the binomial q
estimate read from the summary sidecar.
"""

import argparse
import sys

import figlib

ROWS = [
    ("t", "t", None),
    ("faces at card t-1", "count_below", "count"),
    ("faces at card t", "count_at", "count"),
    ("faces at card t+1", "count_above", "count"),
    ("ratio at card t-1", "ratio_below", "sig3"),
    ("ratio at card t", "ratio_at", "sig3"),
    ("binomial q estimate", None, None),
]


def _sig3(value: float) -> str:
    return f"{float(value):.3g}"


def render_summary_table(csv_path: str) -> str:
    header, rows = figlib.read_csv(csv_path)
    figlib.require_columns(
        header,
        ["m", "t", "count_below", "count_at", "count_above", "ratio_below", "ratio_at"],
        csv_path,
    )
    sidecar = figlib.read_sidecar(csv_path)
    q_by_m = {str(pt.get("m")): pt.get("q_face") for pt in sidecar.get("summary", [])}

    m_values = []
    for row in rows:
        if row["m"] not in m_values:
            m_values.append(row["m"])

    lines = [
        "| quantity | " + " | ".join(f"m={m}" for m in m_values) + " |",
        "|---|" + "---|" * len(m_values),
    ]
    for label, column, kind in ROWS:
        cells = []
        for m in m_values:
            if column is None:
                q = q_by_m.get(str(m))
                cells.append(_sig3(q) if q is not None else "-")
                continue
            series = [r for r in rows if r["m"] == m]
            values = [float(r[column]) for r in series]
            mean = sum(values) / len(values)
            if kind == "count":
                cells.append(_sig3(mean) if mean != int(mean) else str(int(mean)))
            elif kind == "sig3":
                cells.append(_sig3(mean))
            else:
                cells.append(str(int(mean)))
        lines.append(f"| {label} | " + " | ".join(cells) + " |")
    echo = figlib.config_echo(sidecar)
    lines.append("")
    lines.append(f"_{echo}_")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("output", nargs="?")
    args = ap.parse_args(argv)
    try:
        table = render_summary_table(args.csv)
    except (figlib.MissingColumnError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(table)
        print(args.output)
    else:
        print(table, end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
