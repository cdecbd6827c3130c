"""Benchmark report files: per-row CSV plus an accuracy figure."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .corpus import Benchmark, BenchSummary


def write_benchmark_report(bench: Benchmark, summary: BenchSummary,
                           outdir: str | Path) -> list[Path]:
    """Write ``rows.csv`` and ``accuracy.png`` for one scored model column."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sentences = {row.id: row.sentence for row in bench.rows}

    csv_path = outdir / "rows.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["row", "sentence", "derived", "expected",
                         "matched", "scored", "detail"])
        for r in summary.row_results:
            writer.writerow([r.row_id, sentences.get(r.row_id, ""), r.derived,
                             r.expected or "", "yes" if r.matched else "no",
                             "yes" if r.scored else "no", r.detail])

    png_path = outdir / "accuracy.png"
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.bar(["correct", "incorrect"], [summary.correct, summary.incorrect],
           color=["#2a9d8f", "#e76f51"])
    ax.set_title(f"{summary.model}: {summary.correct}/{summary.total} correct")
    ax.set_ylabel("rows")
    for i, value in enumerate([summary.correct, summary.incorrect]):
        ax.text(i, value, str(value), ha="center", va="bottom")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)

    return [csv_path, png_path]
