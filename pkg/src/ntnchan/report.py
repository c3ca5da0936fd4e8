"""CSV serialization and matplotlib figure rendering for the CLI.

Every CSV starts with provenance comment lines (tool version, config hash,
seed); floats are written with six decimal places so identical runs produce
byte-identical files.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import __version__
from .link_budget import BudgetResult

CALIBRATION_COLUMNS = ("case", "direction", "mode", "fspl_db", "al_db",
                       "sl_db", "cnr_db")


def _header_lines(config_hash: str, seed: int | None) -> list[str]:
    lines = [f"# ntnchan {__version__}", f"# config_hash={config_hash}"]
    if seed is not None:
        lines.append(f"# seed={seed}")
    return lines


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(path: Path, columns, rows, config_hash: str = "none",
              seed: int | None = None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        for line in _header_lines(config_hash, seed):
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def calibration_rows(results: list[BudgetResult]):
    return [(r.case_id, r.direction, r.mode, r.losses.fspl_db,
             r.losses.atmospheric_db, r.scintillation_db, r.cnr_db)
            for r in results]


def write_calibration_csv(path: Path, results: list[BudgetResult],
                          config_hash: str = "none") -> None:
    write_csv(path, CALIBRATION_COLUMNS, calibration_rows(results), config_hash)


def write_series_csv(path: Path, series, x_name: str, y_name: str = "snr_db",
                     config_hash: str = "none", seed: int | None = None) -> None:
    write_csv(path, (x_name, y_name), series, config_hash, seed)


def figure_path(csv_path: Path) -> Path:
    return csv_path.with_suffix(".png")


def render_series_figure(csv_path: Path, series, x_label: str, y_label: str,
                         title: str, log_x: bool = False) -> Path:
    xs = [p[0] for p in series]
    ys = [p[1] for p in series]
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.plot(xs, ys, lw=1.2)
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    ax.set_title(title)
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    out = figure_path(csv_path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_calibration_figure(csv_path: Path, results: list[BudgetResult]) -> Path:
    """Grouped bars of CNR per case/direction, pinned vs computed."""
    labels = sorted({f"{r.case_id} {r.direction}" for r in results})
    modes = sorted({r.mode for r in results})
    fig, ax = plt.subplots(figsize=(7, 3.2))
    width = 0.8 / max(1, len(modes))
    for mi, mode in enumerate(modes):
        values = []
        for label in labels:
            case_id, direction = label.split()
            match = [r.cnr_db for r in results
                     if r.case_id == case_id and r.direction == direction and r.mode == mode]
            values.append(match[0] if match else float("nan"))
        offs = [i + (mi - (len(modes) - 1) / 2) * width for i in range(len(labels))]
        ax.bar(offs, values, width=width, label=mode)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("CNR [dB]")
    ax.set_title("Calibration CNR per study case")
    ax.legend()
    ax.grid(True, axis="y", alpha=0.4)
    fig.tight_layout()
    out = figure_path(csv_path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
