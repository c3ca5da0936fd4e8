"""Loading of the bundled data assets.

Every table ships as CSV under ``ntnchan/data``; the directory can be
overridden with the ``NTNCHAN_DATA_DIR`` environment variable (or per call)
for sensitivity studies.  Lines starting with '#' are provenance comments.
"""
from __future__ import annotations

import csv
import os
from functools import lru_cache
from pathlib import Path

DATA_ENV_VAR = "NTNCHAN_DATA_DIR"

ELEVATION_BUCKETS = (10, 20, 30, 40, 50, 60, 70, 80, 90)


class TableError(RuntimeError):
    """Missing or malformed data asset / table entry."""


def data_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


def elevation_bucket(elevation_deg: float) -> int:
    """Quantize an elevation to the 3GPP 10-degree grid.

    Round-half-up to the nearest multiple of 10, clamped to [10, 90].
    """
    if not 0.0 < elevation_deg <= 90.0:
        raise ValueError(f"elevation {elevation_deg} outside (0, 90]")
    bucket = int(elevation_deg / 10.0 + 0.5) * 10
    return min(90, max(10, bucket))


def read_csv_rows(path: Path) -> list[dict[str, str]]:
    if not path.is_file():
        raise TableError(f"data asset not found: {path}")
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


@lru_cache(maxsize=None)
def _cached_rows(path_str: str) -> tuple:
    return tuple(read_csv_rows(Path(path_str)))


def load_rows(name: str, directory: str | os.PathLike | None = None) -> list[dict[str, str]]:
    return list(_cached_rows(str(data_dir(directory) / name)))


def asset_names() -> list[str]:
    """Names of the shipped CSV assets, for the dump-tables command."""
    return sorted(p.name for p in (Path(__file__).parent / "data").glob("*.csv"))
