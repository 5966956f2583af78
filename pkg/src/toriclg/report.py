"""Report rendering: text, JSON, delimited tables, and figures.

The figure path renders the per-degree coefficient columns of a
verification report to a PNG next to the delimited output, so a report
directory is self-contained: report.json + table.csv + periods.png.
"""

import csv
import json
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def render_text(report):
    lines = [f"== {report.title} (order {report.order}) =="]
    for c in report.checks:
        lines.append(c.line())
    if report.table:
        cols = report.columns()
        header = ["degree"] + cols
        lines.append("")
        lines.append("  ".join(f"{h:>18}" for h in header))
        for row in report.table:
            cells = [str(row.get("degree", ""))] + [str(row.get(c, "")) for c in cols]
            lines.append("  ".join(f"{c:>18}" for c in cells))
    if report.census:
        lines.append("")
        lines.append("singularity census:")
        for entry in report.census:
            lines.append("  " + entry)
    lines.append("")
    lines.append(f"verdict: {'pass' if report.verdict else 'FAIL'}   ({report.elapsed:.2f}s)")
    return "\n".join(lines)


def write_csv(report, path):
    cols = report.columns()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["degree"] + cols)
        for row in report.table:
            writer.writerow([row.get("degree", "")] + [str(row.get(c, "")) for c in cols])


def write_figure(report, path):
    """Log-scale plot of the nonzero coefficient magnitudes by degree."""
    cols = report.columns()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    markers = ["o", "s", "^", "d", "v", "*"]
    plotted = False
    for i, col in enumerate(cols):
        xs, ys = [], []
        for row in report.table:
            v = row.get(col)
            if isinstance(v, Fraction) and v != 0:
                xs.append(row["degree"])
                ys.append(abs(float(v)))
        if xs:
            ax.plot(xs, ys, marker=markers[i % len(markers)], fillstyle="none", label=col)
            plotted = True
    if plotted:
        ax.set_yscale("log")
        ax.legend(fontsize=8)
    ax.set_xlabel("degree")
    ax.set_ylabel("|coefficient|")
    ax.set_title(report.title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report, outdir):
    """Write report.json, table.csv, and periods.png into outdir."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    json_path = os.path.join(outdir, "report.json")
    with open(json_path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(json_path)
    csv_path = os.path.join(outdir, "table.csv")
    write_csv(report, csv_path)
    paths.append(csv_path)
    png_path = os.path.join(outdir, "periods.png")
    write_figure(report, png_path)
    paths.append(png_path)
    return paths


def golden_compare(report, path):
    """(ok, message) against a stored canonical report JSON."""
    with open(path) as fh:
        stored = json.load(fh)
    current = report.to_dict()
    if current == stored:
        return True, "report matches golden file"
    diffs = []
    for key in sorted(set(stored) | set(current)):
        if stored.get(key) != current.get(key):
            diffs.append(key)
    return False, f"report differs from golden file in: {', '.join(diffs)}"
