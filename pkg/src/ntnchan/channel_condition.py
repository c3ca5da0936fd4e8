"""LOS/NLOS channel state per NTN scenario, with time-based caching.

The LOS probability depends on the scenario and the elevation angle,
quantized to the 10-degree grid of the 3GPP tables.  Once drawn, a state
stays valid for a configurable window and is served from cache.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geodesy import LinkGeometry
from .tables import ELEVATION_BUCKETS, TableError, elevation_bucket, load_rows


class NtnScenario(enum.Enum):
    DENSE_URBAN = "dense_urban"
    URBAN = "urban"
    SUBURBAN = "suburban"
    RURAL = "rural"


class LosState(enum.Enum):
    LOS = "LOS"
    NLOS = "NLOS"


@dataclass(frozen=True)
class ChannelCondition:
    state: LosState
    generated_at: float
    validity_window: float


class LosProbabilityTable:
    """LOS probability vs (scenario, elevation bucket), from a CSV asset."""

    def __init__(self, directory=None, filename: str = "los_probability.csv"):
        self._table: dict[tuple[NtnScenario, int], float] = {}
        for row in load_rows(filename, directory):
            key = (NtnScenario(row["scenario"]), int(row["elevation_deg"]))
            p = float(row["p_los"])
            if not 0.0 <= p <= 1.0:
                raise TableError(f"p_los {p} out of [0,1] for {key}")
            self._table[key] = p
        for s in NtnScenario:
            for e in ELEVATION_BUCKETS:
                if (s, e) not in self._table:
                    raise TableError(f"missing LOS probability for ({s.value}, {e})")

    def probability(self, scenario: NtnScenario, elevation_deg: float) -> float:
        return self._table[(scenario, elevation_bucket(elevation_deg))]


def los_probability(scenario: NtnScenario, elevation_deg: float,
                    table: LosProbabilityTable | None = None) -> float:
    return (table or _default_table()).probability(scenario, elevation_deg)


_TABLE_CACHE: dict[None, LosProbabilityTable] = {}


def _default_table() -> LosProbabilityTable:
    if None not in _TABLE_CACHE:
        _TABLE_CACHE[None] = LosProbabilityTable()
    return _TABLE_CACHE[None]


class NtnChannelConditionModel:
    """Per-link LOS/NLOS state with expiry-based caching.

    ``get_channel_condition`` returns the cached state while it is younger
    than the validity window, otherwise draws a fresh Bernoulli state.
    Access for one link must be externally serialized; distinct links are
    independent.
    """

    DEFAULT_VALIDITY_WINDOW_S = 0.1

    def __init__(self, scenario: NtnScenario,
                 validity_window_s: float = DEFAULT_VALIDITY_WINDOW_S,
                 table: LosProbabilityTable | None = None):
        if validity_window_s <= 0.0:
            raise ValueError("validity window must be > 0")
        self.scenario = scenario
        self.validity_window_s = validity_window_s
        self.table = table or _default_table()
        self._cache: dict[object, ChannelCondition] = {}

    def get_channel_condition(self, geometry: LinkGeometry, now_s: float,
                              rng: np.random.Generator,
                              link_id: object = None) -> ChannelCondition:
        cached = self._cache.get(link_id)
        if cached is not None and now_s - cached.generated_at < cached.validity_window:
            return cached
        p_los = self.table.probability(self.scenario, geometry.elevation_deg)
        state = LosState.LOS if rng.random() < p_los else LosState.NLOS
        cond = ChannelCondition(state, now_s, self.validity_window_s)
        self._cache[link_id] = cond
        return cond
