"""YAML configuration loading for study cases and sweeps."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import yaml

from .channel_condition import NtnScenario
from .link_budget import DirectionParams, StudyCase, SweepConfig
from .tables import data_dir


class ConfigError(RuntimeError):
    """Unreadable or schema-violating configuration."""


def default_study_case_path() -> Path:
    return data_dir() / "study_cases.yaml"


def _load_yaml(path: Path) -> dict:
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"top level of {path} must be a mapping")
    return doc


def load_study_cases(path: Path | None = None) -> dict[str, StudyCase]:
    path = path or default_study_case_path()
    doc = _load_yaml(path)
    raw_cases = doc.get("study_cases")
    if not isinstance(raw_cases, dict) or not raw_cases:
        raise ConfigError(f"{path}: missing 'study_cases' mapping")
    cases = {}
    for case_id, raw in raw_cases.items():
        try:
            directions = {}
            for direction, dd in raw["directions"].items():
                pinned = dd.get("pinned", {}) or {}
                directions[direction] = DirectionParams(
                    frequency_ghz=float(dd["frequency_ghz"]),
                    eirp_dbw=float(dd["eirp_dbw"]),
                    g_over_t_db_k=float(dd["g_over_t_db_k"]),
                    bandwidth_hz=float(dd["bandwidth_hz"]),
                    pinned_fspl_db=_opt(pinned, "fspl_db"),
                    pinned_atmospheric_db=_opt(pinned, "atmospheric_db"),
                    pinned_scintillation_db=_opt(pinned, "scintillation_db"),
                )
            cases[case_id] = StudyCase(
                case_id=case_id,
                orbit=str(raw["orbit"]),
                altitude_m=float(raw["altitude_m"]),
                stated_elevation_deg=float(raw["stated_elevation_deg"]),
                fspl_consistent_elevation_deg=float(raw["fspl_consistent_elevation_deg"]),
                band=str(raw["band"]),
                scenario=NtnScenario(raw["scenario"]),
                ground_latitude_deg=float(raw["ground_latitude_deg"]),
                terminal_antenna=str(raw["terminal_antenna"]),
                directions=directions,
                slant_range_override_m=_opt(raw, "slant_range_override_m"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: bad study case {case_id!r}: {exc}") from exc
    return cases


def _opt(mapping: dict, key: str) -> float | None:
    v = mapping.get(key)
    return None if v is None else float(v)


def load_sweep_config(path: Path | None = None, **overrides) -> SweepConfig:
    """Sweep configuration from an optional YAML file plus keyword overrides."""
    values: dict = {}
    if path is not None:
        doc = _load_yaml(path)
        values.update(doc.get("sweep", doc))
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "scenario" in values and not isinstance(values["scenario"], NtnScenario):
        values["scenario"] = NtnScenario(values["scenario"])
    try:
        return SweepConfig(**values)
    except TypeError as exc:
        raise ConfigError(f"bad sweep configuration: {exc}") from exc


def config_hash(obj) -> str:
    """Stable short hash of a configuration for output provenance headers."""
    def default(o):
        if hasattr(o, "__dict__"):
            return o.__dict__
        if hasattr(o, "value"):
            return o.value
        return str(o)
    blob = json.dumps(obj, sort_keys=True, default=default).encode()
    return hashlib.sha256(blob).hexdigest()[:12]
