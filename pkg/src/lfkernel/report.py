"""Tabular and plotted summaries of checked scripts and library entries.

Each report is a CSV file plus a PNG bar chart of derivation sizes, drawn
with matplotlib's Agg backend so no display is needed.
"""
from __future__ import annotations

import csv
from pathlib import Path


def _bar_chart(path: Path, labels: list[str], values: list[int], title: str, ylabel: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(labels) + 1.5), 3.6))
    ax.bar(range(len(values)), values, color="#4a78a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=9)
    if values and max(values) > 50 * max(1, min(values)):
        ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def write_script_report(report, out_dir: str | Path) -> tuple[Path, Path]:
    """Per-step CSV and a chart of cumulative derivation size for one script."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(report.path).stem
    csv_path, png_path = out / f"{stem}.csv", out / f"{stem}.png"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "rule", "nodes", "ms", "sequent"])
        for s in report.steps:
            w.writerow([s.label, s.rule, s.nodes, f"{s.ms:.3f}", s.sequent])
        if report.error:
            w.writerow([report.error.get("step") or "", report.error.get("rule") or "", "", "", "FAILED: " + report.error["code"]])
    status = "ok" if report.ok else f"exit {report.exit_code}"
    _bar_chart(png_path, [s.label for s in report.steps], [s.nodes for s in report.steps],
               f"{stem} ({report.theory}, {status})", "derivation nodes")
    return csv_path, png_path


def write_summary(reports, out_dir: str | Path) -> tuple[Path, Path]:
    """One row per checked file."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, png_path = out / "summary.csv", out / "summary.png"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["file", "theory", "exit_code", "nodes", "ms", "rules", "error"])
        for r in reports:
            w.writerow([r.path, r.theory, r.exit_code, r.nodes, f"{r.ms:.3f}", " ".join(r.rules),
                        (r.error or {}).get("code", "")])
    _bar_chart(png_path, [Path(r.path).stem for r in reports], [r.nodes for r in reports],
               "checked scripts", "derivation nodes")
    return csv_path, png_path


def write_library_report(rows, out_dir: str | Path) -> tuple[Path, Path]:
    """``rows`` are (name, theory, nodes, ms, rules) tuples from the catalog."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, png_path = out / "library.csv", out / "library.png"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["theorem", "theory", "nodes", "ms", "rules"])
        for name, theory, nodes, ms, rules in rows:
            w.writerow([name, theory, nodes, f"{ms:.3f}", " ".join(rules)])
    _bar_chart(png_path, [r[0] for r in rows], [r[2] for r in rows], "library derivation sizes", "nodes")
    return csv_path, png_path
