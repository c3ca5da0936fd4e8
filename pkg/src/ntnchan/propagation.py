"""Frequency-flat loss terms of the NTN channel and their dB-domain sum.

Covers free-space path loss, log-normal shadow fading, clutter loss,
atmospheric gas absorption, and ionospheric/tropospheric scintillation.
All table-driven terms read the CSV assets bundled with the package.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .channel_condition import LosState, NtnScenario
from .geodesy import LinkGeometry
from .tables import TableError, elevation_bucket, load_rows

FREQ_MIN_GHZ = 0.5
FREQ_MAX_GHZ = 100.0

# Ionospheric fluctuation reference at 4 GHz (99% level), dB.  Chosen so the
# S-band scintillation loss at 2 GHz equals the 2.2 dB calibration value;
# overridable per call.
DEFAULT_P_FLUC_4GHZ_DB = 1.1

# Latitude band (degrees, absolute) where ionospheric scintillation is
# negligible, and the frequency above which it is ignored entirely.
IONO_EXEMPT_LAT_RANGE = (20.0, 60.0)
IONO_MAX_FREQ_GHZ = 6.0

# Atmospheric absorption applies above this frequency, or below this
# elevation at any frequency.
ATMO_MIN_FREQ_GHZ = 10.0
ATMO_LOW_ELEVATION_DEG = 10.0

TROPO_MIN_FREQ_GHZ = 10.0


class Band(enum.Enum):
    S = "S"
    KA = "Ka"


def band_for_frequency(f_ghz: float) -> Band:
    return Band.S if f_ghz < 6.0 else Band.KA


@dataclass(frozen=True)
class PropagationContext:
    """Lookup key for every table-driven loss term."""

    scenario: NtnScenario
    condition: LosState
    carrier_frequency_ghz: float
    elevation_deg: float
    ground_latitude_deg: float = 45.0

    def __post_init__(self):
        if not FREQ_MIN_GHZ <= self.carrier_frequency_ghz <= FREQ_MAX_GHZ:
            raise ValueError(
                f"carrier {self.carrier_frequency_ghz} GHz outside model range "
                f"[{FREQ_MIN_GHZ}, {FREQ_MAX_GHZ}]")
        if not 0.0 < self.elevation_deg <= 90.0:
            raise ValueError(f"elevation {self.elevation_deg} outside (0, 90]")

    @property
    def band(self) -> Band:
        return band_for_frequency(self.carrier_frequency_ghz)


@dataclass(frozen=True)
class LossFlags:
    """Switches for the stochastic terms (calibration disables both)."""

    shadow_fading: bool = True
    force_los: bool = False


CALIBRATION_FLAGS = LossFlags(shadow_fading=False, force_los=True)


@dataclass(frozen=True)
class LossBreakdown:
    fspl_db: float
    sf_db: float = 0.0
    cl_db: float = 0.0
    atmospheric_db: float = 0.0
    ionospheric_db: float = 0.0
    tropospheric_db: float = 0.0

    @property
    def total_db(self) -> float:
        return (self.fspl_db + self.sf_db + self.cl_db + self.atmospheric_db
                + self.ionospheric_db + self.tropospheric_db)


class PropagationTables:
    """Immutable view over the shadow-fading/clutter, zenith-attenuation and
    tropospheric-scintillation assets."""

    def __init__(self, directory=None):
        self._sf: dict[tuple[NtnScenario, Band, int], tuple[float, float]] = {}
        self._cl: dict[tuple[NtnScenario, Band, int], float] = {}
        for row in load_rows("shadow_fading_clutter.csv", directory):
            key = (NtnScenario(row["scenario"]), Band(row["band"]),
                   int(row["elevation_deg"]))
            self._sf[key] = (float(row["sigma_sf_los_db"]), float(row["sigma_sf_nlos_db"]))
            self._cl[key] = float(row["clutter_loss_db"])

        zen = [(float(r["frequency_ghz"]), float(r["a_zenith_db"]))
               for r in load_rows("zenith_attenuation.csv", directory)]
        zen.sort()
        self._zen_f = np.array([f for f, _ in zen])
        self._zen_a = np.array([a for _, a in zen])

        self._tropo: dict[int, float] = {
            int(r["elevation_deg"]): float(r["attenuation_99_db"])
            for r in load_rows("tropospheric_scintillation.csv", directory)}

    def shadow_sigma(self, scenario: NtnScenario, band: Band,
                     condition: LosState, elevation_deg: float) -> float:
        key = (scenario, band, elevation_bucket(elevation_deg))
        try:
            los_sigma, nlos_sigma = self._sf[key]
        except KeyError:
            raise TableError(f"no shadow-fading entry for {key}") from None
        return los_sigma if condition is LosState.LOS else nlos_sigma

    def clutter_loss(self, scenario: NtnScenario, band: Band,
                     elevation_deg: float) -> float:
        key = (scenario, band, elevation_bucket(elevation_deg))
        try:
            return self._cl[key]
        except KeyError:
            raise TableError(f"no clutter-loss entry for {key}") from None

    def zenith_attenuation(self, f_ghz: float) -> float:
        """Piecewise-linear (in dB) interpolation on the frequency grid."""
        if f_ghz < self._zen_f[0] or f_ghz > self._zen_f[-1]:
            raise TableError(f"zenith attenuation undefined at {f_ghz} GHz")
        return float(np.interp(f_ghz, self._zen_f, self._zen_a))

    def tropospheric_99(self, elevation_deg: float) -> float:
        bucket = elevation_bucket(elevation_deg)
        try:
            return self._tropo[bucket]
        except KeyError:
            raise TableError(f"no tropospheric entry at {bucket} deg") from None


_TABLES: dict[None, PropagationTables] = {}


def default_tables() -> PropagationTables:
    if None not in _TABLES:
        _TABLES[None] = PropagationTables()
    return _TABLES[None]


def fspl(distance_m: float, f_ghz: float) -> float:
    """Free-space path loss, dB; frequency in GHz, distance in meters."""
    if distance_m <= 0.0:
        raise ValueError("distance must be > 0")
    if not FREQ_MIN_GHZ <= f_ghz <= FREQ_MAX_GHZ:
        raise ValueError(f"frequency {f_ghz} GHz outside [{FREQ_MIN_GHZ}, {FREQ_MAX_GHZ}]")
    return 32.45 + 20.0 * math.log10(f_ghz) + 20.0 * math.log10(distance_m)


def shadow_fading_sigma(ctx: PropagationContext,
                        tables: PropagationTables | None = None) -> float:
    tables = tables or default_tables()
    return tables.shadow_sigma(ctx.scenario, ctx.band, ctx.condition, ctx.elevation_deg)


def sample_shadow_fading(ctx: PropagationContext, rng: np.random.Generator,
                         tables: PropagationTables | None = None) -> float:
    """One zero-mean Gaussian draw with the tabulated sigma.

    Callers hold the sample constant per link until the channel condition
    changes (see ShadowFadingCache).
    """
    return float(rng.normal(0.0, shadow_fading_sigma(ctx, tables)))


class ShadowFadingCache:
    """Holds one shadow-fading draw per (link, condition) until invalidated."""

    def __init__(self, tables: PropagationTables | None = None):
        self._tables = tables
        self._values: dict[tuple[object, LosState], float] = {}

    def get(self, link_id: object, ctx: PropagationContext,
            rng: np.random.Generator) -> float:
        key = (link_id, ctx.condition)
        if key not in self._values:
            self._values[key] = sample_shadow_fading(ctx, rng, self._tables)
        return self._values[key]

    def invalidate(self, link_id: object) -> None:
        for state in LosState:
            self._values.pop((link_id, state), None)


def clutter_loss(ctx: PropagationContext,
                 tables: PropagationTables | None = None) -> float:
    """0 dB for LOS; tabulated value for NLOS."""
    if ctx.condition is LosState.LOS:
        return 0.0
    tables = tables or default_tables()
    return tables.clutter_loss(ctx.scenario, ctx.band, ctx.elevation_deg)


def atmospheric_loss(elevation_deg: float, f_ghz: float,
                     tables: PropagationTables | None = None) -> float:
    """Zenith gas attenuation scaled by the cosecant of the elevation.

    Applied above 10 GHz, or at any frequency below 10 degrees of elevation.
    """
    if not 0.0 < elevation_deg <= 90.0:
        raise ValueError(f"elevation {elevation_deg} outside (0, 90]")
    if f_ghz <= ATMO_MIN_FREQ_GHZ and elevation_deg >= ATMO_LOW_ELEVATION_DEG:
        return 0.0
    tables = tables or default_tables()
    return tables.zenith_attenuation(f_ghz) / math.sin(math.radians(elevation_deg))


def ionospheric_scintillation(f_ghz: float, ground_latitude_deg: float,
                              p_fluc_4ghz_db: float = DEFAULT_P_FLUC_4GHZ_DB) -> float:
    """Gigahertz-scintillation-model loss, dB.

    Zero at mid latitudes (|lat| in [20, 60]) and above 6 GHz; otherwise
    (f/4)^-1.5 * P_fluc(4 GHz) / sqrt(2).
    """
    if not FREQ_MIN_GHZ <= f_ghz <= FREQ_MAX_GHZ:
        raise ValueError(f"frequency {f_ghz} GHz outside model range")
    lat = abs(ground_latitude_deg)
    if IONO_EXEMPT_LAT_RANGE[0] <= lat <= IONO_EXEMPT_LAT_RANGE[1]:
        return 0.0
    if f_ghz > IONO_MAX_FREQ_GHZ:
        return 0.0
    return (f_ghz / 4.0) ** -1.5 * p_fluc_4ghz_db / math.sqrt(2.0)


def tropospheric_scintillation(elevation_deg: float, f_ghz: float,
                               tables: PropagationTables | None = None) -> float:
    """99%-of-time tropospheric scintillation, dB.

    Zero at and below 10 GHz; the 20 GHz reference curve is applied unscaled
    across the Ka band.
    """
    if f_ghz <= TROPO_MIN_FREQ_GHZ:
        return 0.0
    tables = tables or default_tables()
    return tables.tropospheric_99(elevation_deg)


def total_loss(geometry: LinkGeometry, ctx: PropagationContext,
               rng: np.random.Generator | None = None,
               flags: LossFlags = LossFlags(),
               tables: PropagationTables | None = None,
               p_fluc_4ghz_db: float = DEFAULT_P_FLUC_4GHZ_DB,
               sf_cache: ShadowFadingCache | None = None,
               link_id: object = None) -> LossBreakdown:
    """Itemized frequency-flat loss for one link evaluation."""
    tables = tables or default_tables()
    condition = LosState.LOS if flags.force_los else ctx.condition
    eff_ctx = PropagationContext(ctx.scenario, condition, ctx.carrier_frequency_ghz,
                                 ctx.elevation_deg, ctx.ground_latitude_deg)
    sf = 0.0
    if flags.shadow_fading:
        if rng is None:
            raise ValueError("shadow fading enabled but no RNG provided")
        if sf_cache is not None:
            sf = sf_cache.get(link_id, eff_ctx, rng)
        else:
            sf = sample_shadow_fading(eff_ctx, rng, tables)
    return LossBreakdown(
        fspl_db=fspl(geometry.slant_range_m, ctx.carrier_frequency_ghz),
        sf_db=sf,
        cl_db=clutter_loss(eff_ctx, tables),
        atmospheric_db=atmospheric_loss(ctx.elevation_deg, ctx.carrier_frequency_ghz, tables),
        ionospheric_db=ionospheric_scintillation(ctx.carrier_frequency_ghz,
                                                 ctx.ground_latitude_deg, p_fluc_4ghz_db),
        tropospheric_db=tropospheric_scintillation(ctx.elevation_deg,
                                                   ctx.carrier_frequency_ghz, tables),
    )
