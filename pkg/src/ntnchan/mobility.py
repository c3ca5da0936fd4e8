"""Position containers for ground terminals and NTN platforms.

Positions are constant between explicit set calls; sweeps reposition nodes
between evaluations.  Geographic storage with geocentric and local-frame
accessors, translated through a configurable reference point (default
"Null Island", lat/lon/alt 0/0/0).
"""
from __future__ import annotations

from dataclasses import dataclass

from .geodesy import (
    NULL_ISLAND,
    EcefVector,
    GeoPosition,
    ReferencePoint,
    geocentric_to_geographic,
    geographic_to_geocentric,
    geographic_to_topocentric,
)


class GeocentricConstantPositionMobilityModel:
    """Holds one node's position in geographic form.

    Getters convert on the fly; the stored representation never drifts.
    Single-writer: concurrent readers are safe only while nothing mutates.
    """

    def __init__(self, position: GeoPosition = NULL_ISLAND,
                 translation_reference: ReferencePoint = NULL_ISLAND):
        self.m_position = position
        self.translation_reference = translation_reference

    def get_geographic_position(self) -> GeoPosition:
        return self.m_position

    def set_geographic_position(self, p: GeoPosition) -> None:
        self.m_position = p

    def get_geocentric_position(self) -> EcefVector:
        return geographic_to_geocentric(self.m_position)

    def set_geocentric_position(self, v: EcefVector) -> None:
        # Raises BelowSurfaceError for sub-surface vectors.
        self.m_position = geocentric_to_geographic(v)

    def set_coordinate_translation_reference_point(self, ref: ReferencePoint) -> None:
        self.translation_reference = ref

    def get_local_position(self) -> tuple[float, float, float]:
        """Topocentric coordinates relative to the translation reference."""
        return geographic_to_topocentric(self.m_position, self.translation_reference)


@dataclass(frozen=True)
class ArcTrajectory:
    """Uniform-longitude arc at fixed altitude and latitude."""

    orbit_altitude_m: float
    start_longitude_deg: float
    end_longitude_deg: float
    latitude_deg: float = 0.0
    steps: int = 61

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("trajectory needs at least 2 steps")
        if self.start_longitude_deg == self.end_longitude_deg:
            raise ValueError("start and end longitude must differ")

    def longitudes(self) -> list[float]:
        span = self.end_longitude_deg - self.start_longitude_deg
        return [self.start_longitude_deg + span * i / (self.steps - 1)
                for i in range(self.steps)]


def arc_positions(t: ArcTrajectory) -> list[EcefVector]:
    """Ordered geocentric positions along the arc."""
    return [
        geographic_to_geocentric(GeoPosition(t.latitude_deg, lon, t.orbit_altitude_m))
        for lon in t.longitudes()
    ]
