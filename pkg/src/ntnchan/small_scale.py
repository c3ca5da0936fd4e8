"""Large-scale fading parameter lookup and cluster-level channel generation.

The parameter table is keyed by scenario, LOS condition, band and elevation
bucket (144 combinations) and ships as a CSV asset.  Cluster delays and
powers follow the standard stochastic-geometry recipe (exponential delays
scaled by r_tau * DS, delay-dependent powers with per-cluster shadowing,
Ricean adjustment for LOS), feeding a simplified single-stream frequency
response.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .channel_condition import LosState, NtnScenario
from .propagation import Band
from .tables import ELEVATION_BUCKETS, TableError, elevation_bucket, load_rows


@dataclass(frozen=True)
class LspKey:
    scenario: NtnScenario
    condition: LosState
    band: Band
    elevation_bucket_deg: int

    def __post_init__(self):
        if self.elevation_bucket_deg not in ELEVATION_BUCKETS:
            raise ValueError(f"elevation bucket {self.elevation_bucket_deg} not on the 10-degree grid")


@dataclass(frozen=True)
class LspSet:
    """Distribution parameters for one key.

    Delay/angular spreads are log10-domain (mu, sigma); K-factor is dB.
    """

    mu_lg_ds: float
    sigma_lg_ds: float
    mu_lg_asd: float
    sigma_lg_asd: float
    mu_lg_asa: float
    sigma_lg_asa: float
    mu_lg_zsd: float
    sigma_lg_zsd: float
    mu_lg_zsa: float
    sigma_lg_zsa: float
    mu_k_db: float
    sigma_k_db: float
    delay_scaling: float
    n_clusters: int
    n_rays: int
    per_cluster_shadowing_db: float

    def __post_init__(self):
        if self.n_clusters < 1 or self.n_rays < 1:
            raise ValueError("cluster and ray counts must be >= 1")
        if self.delay_scaling <= 0.0:
            raise ValueError("delay scaling must be > 0")
        for name in ("sigma_lg_ds", "sigma_lg_asd", "sigma_lg_asa",
                     "sigma_lg_zsd", "sigma_lg_zsa", "sigma_k_db"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class ClusterSet:
    """Sorted delays (first at zero) and unit-sum linear powers."""

    delays_s: tuple[float, ...]
    powers: tuple[float, ...]

    def __post_init__(self):
        if len(self.delays_s) != len(self.powers):
            raise ValueError("delays and powers must have equal length")


_LSP_FIELDS = [f for f in LspSet.__dataclass_fields__]


class LspTable:
    """All 144 parameter sets, loaded and totality-checked at startup."""

    def __init__(self, directory=None, filename: str = "lsp_parameters.csv"):
        self._table: dict[LspKey, LspSet] = {}
        for row in load_rows(filename, directory):
            key = LspKey(NtnScenario(row["scenario"]), LosState(row["condition"]),
                         Band(row["band"]), int(row["elevation_deg"]))
            kwargs = {}
            for f in _LSP_FIELDS:
                raw = row[f]
                kwargs[f] = int(raw) if f in ("n_clusters", "n_rays") else float(raw)
            self._table[key] = LspSet(**kwargs)
        missing = [
            (s.value, c.value, b.value, e)
            for s in NtnScenario for c in LosState for b in Band
            for e in ELEVATION_BUCKETS
            if LspKey(s, c, b, e) not in self._table
        ]
        if missing:
            raise TableError(f"LSP table incomplete, {len(missing)} keys missing, "
                             f"first: {missing[0]}")

    def __len__(self) -> int:
        return len(self._table)

    def lookup(self, key: LspKey) -> LspSet:
        try:
            return self._table[key]
        except KeyError:
            raise TableError(f"no LSP entry for {key}") from None


_TABLE: dict[None, LspTable] = {}


def default_lsp_table() -> LspTable:
    if None not in _TABLE:
        _TABLE[None] = LspTable()
    return _TABLE[None]


def lsp_lookup(scenario: NtnScenario, condition: LosState, band: Band,
               elevation_deg: float, table: LspTable | None = None) -> LspSet:
    """Bucketed table lookup; elevation quantization matches the LOS tables."""
    key = LspKey(scenario, condition, band, elevation_bucket(elevation_deg))
    return (table or default_lsp_table()).lookup(key)


# Azimuth / zenith angle-generation constants vs cluster count.  The 4..25
# range is the standard cellular table; 2 and 3 extend it downward for the
# sparse NTN scenarios.
_C_PHI_NLOS = {
    2: 0.501, 3: 0.680, 4: 0.779, 5: 0.860, 8: 1.018, 10: 1.090, 11: 1.123,
    12: 1.146, 14: 1.190, 15: 1.211, 16: 1.226, 19: 1.273, 20: 1.289, 25: 1.358,
}
_C_THETA_NLOS = {
    2: 0.430, 3: 0.594, 8: 0.889, 10: 0.957, 11: 1.031, 12: 1.104,
    15: 1.1088, 19: 1.184, 20: 1.178, 25: 1.282,
}


def _los_correction_azimuth(k_db: float) -> float:
    return 1.1035 - 0.028 * k_db - 0.002 * k_db ** 2 + 0.0001 * k_db ** 3


def _los_correction_zenith(k_db: float) -> float:
    return 1.3086 + 0.0339 * k_db - 0.0077 * k_db ** 2 + 0.0002 * k_db ** 3


def angular_scaling_factor(n_clusters: int, k_factor_db: float | None = None,
                           kind: str = "azimuth") -> float:
    """Angle-generation scaling constant for ``n_clusters`` clusters.

    ``k_factor_db`` switches on the LOS correction polynomial; ``kind`` picks
    the azimuth or zenith constant.
    """
    if n_clusters < 1:
        raise ValueError("cluster count must be >= 1")
    table = _C_PHI_NLOS if kind == "azimuth" else _C_THETA_NLOS
    if kind not in ("azimuth", "zenith"):
        raise ValueError(f"unknown kind {kind!r}")
    if n_clusters not in table:
        raise TableError(f"no {kind} scaling constant for {n_clusters} clusters "
                         f"(known: {sorted(table)})")
    c = table[n_clusters]
    if k_factor_db is not None:
        correction = (_los_correction_azimuth(k_factor_db) if kind == "azimuth"
                      else _los_correction_zenith(k_factor_db))
        c *= correction
    return c


def generate_clusters(lsp: LspSet, rng: np.random.Generator) -> ClusterSet:
    """Draw one realization of cluster delays and powers.

    Exponential delays scaled by r_tau * DS, sorted and shifted so the first
    is zero; powers exponential in delay with per-cluster shadowing, then
    normalized.  For LOS parameter sets the drawn K-factor boosts the first
    cluster.
    """
    n = lsp.n_clusters
    ds = 10.0 ** (rng.normal(lsp.mu_lg_ds, lsp.sigma_lg_ds))
    r_tau = lsp.delay_scaling

    raw = -r_tau * ds * np.log(rng.uniform(size=n))
    delays = np.sort(raw)
    delays = delays - delays[0]

    shadowing = rng.normal(0.0, lsp.per_cluster_shadowing_db, size=n)
    powers = np.exp(-delays * (r_tau - 1.0) / (r_tau * ds)) * 10.0 ** (-shadowing / 10.0)
    powers = powers / powers.sum()

    if lsp.sigma_k_db > 0.0 or lsp.mu_k_db != 0.0:
        k_db = rng.normal(lsp.mu_k_db, lsp.sigma_k_db)
        k_lin = 10.0 ** (k_db / 10.0)
        powers = powers / (k_lin + 1.0)
        powers[0] += k_lin / (k_lin + 1.0)

    return ClusterSet(tuple(float(t) for t in delays),
                      tuple(float(p) for p in powers))


def transfer_function(clusters: ClusterSet, frequencies_hz,
                      rng: np.random.Generator) -> np.ndarray:
    """Single-stream complex channel gain per frequency.

    H(f) = sum_n sqrt(P_n) e^{j phi_n} e^{-j 2 pi f tau_n} with i.i.d.
    uniform phases, so E[|H|^2] = 1.
    """
    freqs = np.asarray(frequencies_hz, dtype=float)
    if freqs.size == 0:
        raise ValueError("frequency grid must be non-empty")
    phases = rng.uniform(0.0, 2.0 * math.pi, size=len(clusters.powers))
    amplitudes = np.sqrt(np.asarray(clusters.powers)) * np.exp(1j * phases)
    delays = np.asarray(clusters.delays_s)
    return (amplitudes[None, :] * np.exp(-2j * math.pi * freqs[:, None] * delays[None, :])).sum(axis=1)
