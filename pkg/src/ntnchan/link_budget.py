"""CNR link budget, calibration study cases, and SNR sweeps.

The calibration runner reproduces the four reference study cases in two
modes: ``pinned`` (per-case loss overrides, matching the published numbers
exactly) and ``computed`` (pure geometry plus tables).  Both are meant to be
emitted side by side so discrepancies stay visible.

Sweeps evaluate SNR along a frequency grid, a GEO orbital arc, or a LEO
altitude range, with fixed quoted antenna peak gains modulated by the
normalized circular-aperture pattern.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import geodesy
from .antenna import (
    CircularApertureAntenna,
    aperture_radius_for_gain,
    circular_aperture_gain,
    effective_offaxis_angle,
)
from .channel_condition import LosState, NtnScenario
from .geodesy import EcefVector, GeoPosition, geographic_to_geocentric
from .propagation import (
    LossBreakdown,
    PropagationTables,
    atmospheric_loss,
    default_tables,
    fspl,
    ionospheric_scintillation,
    tropospheric_scintillation,
)

# -10 log10 of the Boltzmann constant, dBW/K/Hz.
BOLTZMANN_DB = 228.6

MIN_PATTERN_LINEAR = 1e-30  # dB floor for deep pattern nulls


@dataclass(frozen=True)
class DirectionParams:
    """Per-direction (DL/UL) transmission parameters of a study case."""

    frequency_ghz: float
    eirp_dbw: float
    g_over_t_db_k: float
    bandwidth_hz: float
    pinned_fspl_db: float | None = None
    pinned_atmospheric_db: float | None = None
    pinned_scintillation_db: float | None = None


@dataclass(frozen=True)
class StudyCase:
    """One calibration configuration (orbit, geometry, link parameters).

    ``stated_elevation_deg`` is the elevation quoted for the case;
    ``fspl_consistent_elevation_deg`` is the one whose spherical slant range
    reproduces the published FSPL.  Both are carried and reported; neither is
    silently corrected.
    """

    case_id: str
    orbit: str                      # "GEO" or "LEO"
    altitude_m: float
    stated_elevation_deg: float
    fspl_consistent_elevation_deg: float
    band: str
    scenario: NtnScenario
    ground_latitude_deg: float
    terminal_antenna: str           # "VSAT" or "UPA"
    directions: dict[str, DirectionParams]
    slant_range_override_m: float | None = None

    def __post_init__(self):
        if not self.directions:
            raise ValueError(f"study case {self.case_id} has no directions")
        for d in self.directions:
            if d not in ("DL", "UL"):
                raise ValueError(f"unknown direction {d!r} in {self.case_id}")


@dataclass(frozen=True)
class BudgetResult:
    case_id: str
    direction: str
    mode: str
    losses: LossBreakdown
    cnr_db: float
    eirp_dbw: float
    g_over_t_db_k: float
    bandwidth_hz: float
    stated_elevation_deg: float
    fspl_consistent_elevation_deg: float

    @property
    def scintillation_db(self) -> float:
        return self.losses.ionospheric_db + self.losses.tropospheric_db


def cnr(eirp_dbw: float, g_over_t_db_k: float, total_loss_db: float,
        bandwidth_hz: float) -> float:
    """Carrier-to-noise ratio, dB."""
    if bandwidth_hz <= 0.0:
        raise ValueError("bandwidth must be > 0")
    return (eirp_dbw + g_over_t_db_k - total_loss_db + BOLTZMANN_DB
            - 10.0 * math.log10(bandwidth_hz))


def _case_losses(sc: StudyCase, d: DirectionParams, mode: str,
                 tables: PropagationTables) -> LossBreakdown:
    if mode == "pinned":
        if d.pinned_fspl_db is not None:
            fspl_db = d.pinned_fspl_db
        elif sc.slant_range_override_m is not None:
            fspl_db = fspl(sc.slant_range_override_m, d.frequency_ghz)
        else:
            fspl_db = fspl(geodesy.slant_range(sc.altitude_m, sc.fspl_consistent_elevation_deg),
                           d.frequency_ghz)
        al = d.pinned_atmospheric_db
        sl = d.pinned_scintillation_db
        if al is None:
            al = atmospheric_loss(sc.stated_elevation_deg, d.frequency_ghz, tables)
        if sl is None:
            sl = (ionospheric_scintillation(d.frequency_ghz, sc.ground_latitude_deg)
                  + tropospheric_scintillation(sc.stated_elevation_deg, d.frequency_ghz, tables))
        # The SL column mixes ionospheric and tropospheric contributions;
        # a pinned value is booked on the dominant term for the band.
        iono = sl if d.frequency_ghz <= 6.0 else 0.0
        tropo = sl if d.frequency_ghz > 6.0 else 0.0
        return LossBreakdown(fspl_db=fspl_db, atmospheric_db=al,
                             ionospheric_db=iono, tropospheric_db=tropo)
    if mode == "computed":
        distance = geodesy.slant_range(sc.altitude_m, sc.fspl_consistent_elevation_deg)
        return LossBreakdown(
            fspl_db=fspl(distance, d.frequency_ghz),
            atmospheric_db=atmospheric_loss(sc.stated_elevation_deg, d.frequency_ghz, tables),
            ionospheric_db=ionospheric_scintillation(d.frequency_ghz, sc.ground_latitude_deg),
            tropospheric_db=tropospheric_scintillation(sc.stated_elevation_deg,
                                                       d.frequency_ghz, tables),
        )
    raise ValueError(f"unknown calibration mode {mode!r}")


def evaluate_case(sc: StudyCase, direction: str, mode: str,
                  tables: PropagationTables | None = None) -> BudgetResult:
    tables = tables or default_tables()
    d = sc.directions[direction]
    losses = _case_losses(sc, d, mode, tables)
    return BudgetResult(
        case_id=sc.case_id,
        direction=direction,
        mode=mode,
        losses=losses,
        cnr_db=cnr(d.eirp_dbw, d.g_over_t_db_k, losses.total_db, d.bandwidth_hz),
        eirp_dbw=d.eirp_dbw,
        g_over_t_db_k=d.g_over_t_db_k,
        bandwidth_hz=d.bandwidth_hz,
        stated_elevation_deg=sc.stated_elevation_deg,
        fspl_consistent_elevation_deg=sc.fspl_consistent_elevation_deg,
    )


def run_calibration(cases: list[StudyCase], mode: str = "both",
                    tables: PropagationTables | None = None) -> list[BudgetResult]:
    """One BudgetResult per case, direction and mode.

    Deterministic: shadow fading and fast fading are never active here
    (the published table has no column for either).
    """
    modes = ("pinned", "computed") if mode == "both" else (mode,)
    results = []
    for sc in cases:
        for direction in sorted(sc.directions):
            for m in modes:
                results.append(evaluate_case(sc, direction, m, tables))
    return results


@dataclass(frozen=True)
class SweepConfig:
    """Shared parameters for the SNR sweeps (defaults per the reference
    simulation setup: GEO downlink, suburban, fixed quoted gains)."""

    tx_power_dbm: float = 37.5
    satellite_gain_dbi: float = 58.5
    terminal_gain_dbi: float = 39.7
    scenario: NtnScenario = NtnScenario.SUBURBAN
    orbit_altitude_m: float = 35_786_000.0
    elevation_deg: float = 90.0
    ground_latitude_deg: float = 45.0
    noise_temperature_k: float = 290.0
    bandwidth_hz: float = 10e6
    aperture_efficiency: float = 0.6
    frequency_ghz: float = 20.0          # carrier for arc/altitude sweeps
    arc_start_longitude_deg: float = 8.8
    arc_end_longitude_deg: float = 14.8
    arc_latitude_deg: float = 0.0
    arc_steps: int = 121
    ground_terminal_tracks: bool = True  # only the satellite antenna stays fixed

    @property
    def tx_power_dbw(self) -> float:
        return self.tx_power_dbm - 30.0

    @property
    def noise_power_dbw(self) -> float:
        return (-BOLTZMANN_DB + 10.0 * math.log10(self.noise_temperature_k)
                + 10.0 * math.log10(self.bandwidth_hz))


def _pattern_db(normalized_gain: float) -> float:
    return 10.0 * math.log10(max(normalized_gain, MIN_PATTERN_LINEAR))


def _flat_losses(cfg: SweepConfig, distance_m: float, elevation_deg: float,
                 f_ghz: float, tables: PropagationTables) -> float:
    return (fspl(distance_m, f_ghz)
            + atmospheric_loss(elevation_deg, f_ghz, tables)
            + ionospheric_scintillation(f_ghz, cfg.ground_latitude_deg)
            + tropospheric_scintillation(elevation_deg, f_ghz, tables))


def sweep_frequency(f_start_hz: float, f_stop_hz: float, f_step_hz: float,
                    cfg: SweepConfig | None = None,
                    tables: PropagationTables | None = None) -> list[tuple[float, float]]:
    """(frequency Hz, SNR dB) along a frequency grid at fixed geometry.

    Boresight-aligned antennas, so the quoted peak gains apply unmodulated.
    """
    cfg = cfg or SweepConfig()
    tables = tables or default_tables()
    if f_stop_hz <= f_start_hz or f_step_hz <= 0.0:
        raise ValueError("invalid frequency range")
    distance = geodesy.slant_range(cfg.orbit_altitude_m, cfg.elevation_deg)
    series = []
    f = f_start_hz
    n = 0
    while f <= f_stop_hz + 1e-6:
        f_ghz = f / 1e9
        loss = _flat_losses(cfg, distance, cfg.elevation_deg, f_ghz, tables)
        snr = (cfg.tx_power_dbw + cfg.satellite_gain_dbi + cfg.terminal_gain_dbi
               - loss - cfg.noise_power_dbw)
        series.append((f, snr))
        n += 1
        f = f_start_hz + n * f_step_hz
    return series


def sweep_arc(cfg: SweepConfig | None = None,
              tables: PropagationTables | None = None) -> list[tuple[float, float]]:
    """(satellite longitude deg, SNR dB) along a fixed-altitude orbital arc.

    The satellite antenna keeps the boresight it had at the arc midpoint
    (pointing at the ground terminal); the terminal sits at the sub-satellite
    point of the midpoint.  By default the terminal antenna tracks the
    satellite, so the SNR profile is the satellite pattern alone.
    """
    cfg = cfg or SweepConfig()
    tables = tables or default_tables()
    mid_lon = 0.5 * (cfg.arc_start_longitude_deg + cfg.arc_end_longitude_deg)
    span = cfg.arc_end_longitude_deg - cfg.arc_start_longitude_deg
    # Longitudes built as symmetric offsets from the midpoint so paired
    # points are exact floating-point mirrors.
    longitudes = [mid_lon + span * (i / (cfg.arc_steps - 1) - 0.5)
                  for i in range(cfg.arc_steps)]
    positions = [geographic_to_geocentric(
        GeoPosition(cfg.arc_latitude_deg, lon, cfg.orbit_altitude_m))
        for lon in longitudes]

    ground = geographic_to_geocentric(GeoPosition(cfg.arc_latitude_deg, mid_lon, 0.0))
    mid_sat = geographic_to_geocentric(
        GeoPosition(cfg.arc_latitude_deg, mid_lon, cfg.orbit_altitude_m))
    boresight = _unit(ground - mid_sat)
    f_ghz = cfg.frequency_ghz
    sat_antenna = CircularApertureAntenna(
        aperture_radius_for_gain(cfg.satellite_gain_dbi, f_ghz, cfg.aperture_efficiency),
        f_ghz, cfg.satellite_gain_dbi, boresight)
    term_antenna = CircularApertureAntenna(
        aperture_radius_for_gain(cfg.terminal_gain_dbi, f_ghz, cfg.aperture_efficiency),
        f_ghz, cfg.terminal_gain_dbi, _unit(mid_sat - ground))

    series = []
    for lon, sat in zip(longitudes, positions):
        geom = geodesy.link_geometry(ground, sat)
        theta_sat = effective_offaxis_angle(boresight, _as_tuple(ground - sat))
        gain = (cfg.satellite_gain_dbi
                + _pattern_db(circular_aperture_gain(theta_sat, sat_antenna))
                + cfg.terminal_gain_dbi)
        if not cfg.ground_terminal_tracks:
            theta_term = effective_offaxis_angle(term_antenna.boresight,
                                                 _as_tuple(sat - ground))
            gain += _pattern_db(circular_aperture_gain(theta_term, term_antenna))
        loss = _flat_losses(cfg, geom.slant_range_m, geom.elevation_deg, f_ghz, tables)
        snr = cfg.tx_power_dbw + gain - loss - cfg.noise_power_dbw
        series.append((lon, snr))
    return series


def sweep_altitude(h_start_m: float, h_stop_m: float, h_step_m: float,
                   cfg: SweepConfig | None = None,
                   tables: PropagationTables | None = None) -> list[tuple[float, float]]:
    """(altitude m, SNR dB) for a platform overhead at fixed elevation."""
    cfg = cfg or SweepConfig()
    tables = tables or default_tables()
    if h_stop_m <= h_start_m or h_step_m <= 0.0:
        raise ValueError("invalid altitude range")
    f_ghz = cfg.frequency_ghz
    series = []
    h = h_start_m
    n = 0
    while h <= h_stop_m + 1e-6:
        distance = geodesy.slant_range(h, cfg.elevation_deg)
        loss = _flat_losses(cfg, distance, cfg.elevation_deg, f_ghz, tables)
        snr = (cfg.tx_power_dbw + cfg.satellite_gain_dbi + cfg.terminal_gain_dbi
               - loss - cfg.noise_power_dbw)
        series.append((h, snr))
        n += 1
        h = h_start_m + n * h_step_m
    return series


def _unit(v: EcefVector) -> tuple[float, float, float]:
    n = v.norm()
    return (v.x / n, v.y / n, v.z / n)


def _as_tuple(v: EcefVector) -> tuple[float, float, float]:
    return (v.x, v.y, v.z)
