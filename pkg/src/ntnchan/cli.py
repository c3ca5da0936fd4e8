"""Batch command-line front-end.

Subcommands: calibrate, sweep-frequency, sweep-arc, sweep-altitude,
pattern, fading, dump-tables.  Each writes CSV (and, unless --no-plot, a
PNG figure next to it) and exits 0 on success.  Errors are single-line and
machine-parsable on stderr with distinct exit codes: 2 usage, 3 config,
4 data-table/schema.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, report
from .antenna import CircularApertureAntenna, aperture_radius_for_gain, circular_aperture_gain
from .channel_condition import LosState, NtnScenario
from .config import ConfigError, config_hash, load_study_cases, load_sweep_config
from .link_budget import run_calibration, sweep_altitude, sweep_arc, sweep_frequency
from .propagation import Band
from .small_scale import default_lsp_table, generate_clusters, lsp_lookup, transfer_function
from .tables import TableError, asset_names, data_dir

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_TABLE = 4

DEFAULT_SEED = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntn-channel",
        description="NTN channel-model batch runner (calibration, SNR sweeps, "
                    "antenna and fading dumps).")
    parser.add_argument("--version", action="version", version=f"ntn-channel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seeded=False):
        p.add_argument("--output", "-o", type=Path, required=True,
                       help="output CSV path (figure written next to it)")
        p.add_argument("--config", type=Path, default=None,
                       help="YAML config overriding the bundled defaults")
        p.add_argument("--no-plot", action="store_true",
                       help="skip rendering the PNG figure")
        if seeded:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                           help=f"RNG seed (default {DEFAULT_SEED})")

    p = sub.add_parser("calibrate", help="reproduce the calibration study cases")
    add_common(p)
    p.add_argument("--cases", default="sc1,sc6,sc9,sc14",
                   help="comma-separated study case ids")
    p.add_argument("--mode", choices=["pinned", "computed", "both"], default="both",
                   help="pinned uses per-case published loss values; computed "
                        "derives everything from geometry and tables")

    p = sub.add_parser("sweep-frequency", help="SNR vs carrier frequency")
    add_common(p)
    p.add_argument("--from", dest="f_from", type=float, default=20e9, help="start frequency, Hz")
    p.add_argument("--to", dest="f_to", type=float, default=100e9, help="stop frequency, Hz")
    p.add_argument("--step", type=float, default=100e6, help="frequency step, Hz")

    p = sub.add_parser("sweep-arc", help="SNR vs satellite longitude along a GEO arc")
    add_common(p)
    p.add_argument("--start-longitude", type=float, default=None)
    p.add_argument("--end-longitude", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("sweep-altitude", help="SNR vs platform altitude")
    add_common(p)
    p.add_argument("--from", dest="h_from", type=float, default=300e3, help="start altitude, m")
    p.add_argument("--to", dest="h_to", type=float, default=1600e3, help="stop altitude, m")
    p.add_argument("--step", type=float, default=25e3, help="altitude step, m")

    p = sub.add_parser("pattern", help="circular-aperture gain vs off-boresight angle")
    add_common(p)
    p.add_argument("--gain-dbi", type=float, default=39.7, help="peak gain used to size the aperture")
    p.add_argument("--frequency-ghz", type=float, default=20.0)
    p.add_argument("--efficiency", type=float, default=0.6)
    p.add_argument("--theta-max", type=float, default=10.0, help="max |theta|, degrees")
    p.add_argument("--points", type=int, default=2001)

    p = sub.add_parser("fading", help="one cluster realization and its |H(f)| trace")
    add_common(p, seeded=True)
    p.add_argument("--scenario", choices=[s.value for s in NtnScenario], default="suburban")
    p.add_argument("--condition", choices=["LOS", "NLOS"], default="NLOS")
    p.add_argument("--band", choices=["S", "Ka"], default="S")
    p.add_argument("--elevation", type=float, default=30.0)
    p.add_argument("--center-frequency-ghz", type=float, default=2.0)
    p.add_argument("--span-hz", type=float, default=50e6)
    p.add_argument("--points", type=int, default=512)

    p = sub.add_parser("dump-tables", help="print the active data tables with provenance headers")
    p.add_argument("--data-dir", type=Path, default=None)

    return parser


def _emit(args, columns, rows, hash_str, seed=None, x_label="x", y_label="y",
          title="", log_x=False):
    report.write_csv(args.output, columns, rows, hash_str, seed)
    if not args.no_plot and len(columns) == 2:
        report.render_series_figure(args.output, rows, x_label, y_label, title, log_x)


def _cmd_calibrate(args) -> int:
    cases = load_study_cases(args.config)
    wanted = [c.strip() for c in args.cases.split(",") if c.strip()]
    unknown = [c for c in wanted if c not in cases]
    if unknown:
        raise ConfigError(f"unknown study cases: {','.join(unknown)} "
                          f"(available: {','.join(sorted(cases))})")
    results = run_calibration([cases[c] for c in wanted], args.mode)
    hash_str = config_hash({"cases": wanted, "mode": args.mode,
                            "config": str(args.config)})
    report.write_calibration_csv(args.output, results, hash_str)
    if not args.no_plot:
        report.render_calibration_figure(args.output, results)
    return EXIT_OK


def _cmd_sweep_frequency(args) -> int:
    cfg = load_sweep_config(args.config)
    series = sweep_frequency(args.f_from, args.f_to, args.step, cfg)
    hash_str = config_hash({"cmd": "sweep-frequency", "from": args.f_from,
                            "to": args.f_to, "step": args.step, "cfg": cfg})
    _emit(args, ("frequency_hz", "snr_db"), series, hash_str,
          x_label="Carrier frequency [Hz]", y_label="SNR [dB]",
          title="SNR vs carrier frequency")
    return EXIT_OK


def _cmd_sweep_arc(args) -> int:
    overrides = {}
    if args.start_longitude is not None:
        overrides["arc_start_longitude_deg"] = args.start_longitude
    if args.end_longitude is not None:
        overrides["arc_end_longitude_deg"] = args.end_longitude
    if args.steps is not None:
        overrides["arc_steps"] = args.steps
    cfg = load_sweep_config(args.config, **overrides)
    series = sweep_arc(cfg)
    hash_str = config_hash({"cmd": "sweep-arc", "cfg": cfg})
    _emit(args, ("satellite_longitude_deg", "snr_db"), series, hash_str,
          x_label="Satellite longitude [deg]", y_label="SNR [dB]",
          title="SNR vs satellite position along the arc")
    return EXIT_OK


def _cmd_sweep_altitude(args) -> int:
    cfg = load_sweep_config(args.config)
    series = sweep_altitude(args.h_from, args.h_to, args.step, cfg)
    hash_str = config_hash({"cmd": "sweep-altitude", "from": args.h_from,
                            "to": args.h_to, "step": args.step, "cfg": cfg})
    _emit(args, ("altitude_m", "snr_db"), series, hash_str,
          x_label="Platform altitude [m]", y_label="SNR [dB]",
          title="SNR vs platform altitude")
    return EXIT_OK


def _cmd_pattern(args) -> int:
    radius = aperture_radius_for_gain(args.gain_dbi, args.frequency_ghz, args.efficiency)
    antenna = CircularApertureAntenna(radius, args.frequency_ghz, args.gain_dbi)
    thetas = np.linspace(-args.theta_max, args.theta_max, args.points)
    rows = [(float(t), float(circular_aperture_gain(float(t), antenna))) for t in thetas]
    hash_str = config_hash({"cmd": "pattern", "gain": args.gain_dbi,
                            "f": args.frequency_ghz, "eta": args.efficiency,
                            "theta_max": args.theta_max, "points": args.points})
    _emit(args, ("theta_deg", "normalized_gain"), rows, hash_str,
          x_label="Off-boresight angle [deg]", y_label="Normalized gain",
          title=f"Circular aperture pattern, {args.gain_dbi} dBi at {args.frequency_ghz} GHz")
    return EXIT_OK


def _cmd_fading(args) -> int:
    rng = np.random.default_rng(args.seed)
    lsp = lsp_lookup(NtnScenario(args.scenario), LosState(args.condition),
                     Band(args.band), args.elevation)
    clusters = generate_clusters(lsp, rng)
    f0 = args.center_frequency_ghz * 1e9
    freqs = np.linspace(f0 - args.span_hz / 2, f0 + args.span_hz / 2, args.points)
    h = transfer_function(clusters, freqs, rng)
    hash_str = config_hash({"cmd": "fading", "scenario": args.scenario,
                            "condition": args.condition, "band": args.band,
                            "elevation": args.elevation, "seed": args.seed,
                            "f0": f0, "span": args.span_hz, "points": args.points})
    cluster_path = args.output.with_name(args.output.stem + "_clusters.csv")
    report.write_csv(cluster_path, ("cluster", "delay_s", "power"),
                     [(i, d, p) for i, (d, p) in
                      enumerate(zip(clusters.delays_s, clusters.powers))],
                     hash_str, args.seed)
    rows = [(float(f), float(abs(hh))) for f, hh in zip(freqs, h)]
    report.write_csv(args.output, ("frequency_hz", "h_abs"), rows, hash_str, args.seed)
    if not args.no_plot:
        report.render_series_figure(args.output, rows, "Frequency [Hz]", "|H(f)|",
                                    f"Fading realization ({args.scenario}, "
                                    f"{args.condition}, {args.band}-band)")
    return EXIT_OK


def _cmd_dump_tables(args) -> int:
    directory = data_dir(args.data_dir)
    for name in asset_names():
        path = directory / name
        print(f"=== {name} ===")
        if path.is_file():
            sys.stdout.write(path.read_text())
        else:
            raise TableError(f"data asset not found: {path}")
    print("=== lsp key count ===")
    print(len(default_lsp_table()))
    return EXIT_OK


_COMMANDS = {
    "calibrate": _cmd_calibrate,
    "sweep-frequency": _cmd_sweep_frequency,
    "sweep-arc": _cmd_sweep_arc,
    "sweep-altitude": _cmd_sweep_altitude,
    "pattern": _cmd_pattern,
    "fading": _cmd_fading,
    "dump-tables": _cmd_dump_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TableError as exc:
        print(f"error: table: {exc}", file=sys.stderr)
        return EXIT_TABLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
