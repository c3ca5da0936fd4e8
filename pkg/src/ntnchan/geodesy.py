"""Spherical-Earth coordinate types and conversions.

All positions live on (or above) a sphere of radius 6 371 km.  Three frames
are supported:

* geographic  — latitude / longitude / altitude
* geocentric  — Earth-centered Cartesian (ECEF), meters
* topocentric — local east/north/up plane anchored at a reference point

Angles cross the API in degrees; radians are internal only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0


class BelowSurfaceError(ValueError):
    """Geocentric vector with norm smaller than the Earth radius."""


class UndefinedGeometryError(ValueError):
    """Link geometry cannot be computed (e.g. coincident endpoints)."""


@dataclass(frozen=True)
class GeoPosition:
    """Geographic position: degrees latitude/longitude, meters altitude."""

    latitude_deg: float
    longitude_deg: float
    altitude_m: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError(f"latitude {self.latitude_deg} outside [-90, 90]")
        if not -180.0 <= self.longitude_deg < 180.0:
            raise ValueError(f"longitude {self.longitude_deg} outside [-180, 180)")
        if self.altitude_m < 0.0:
            raise ValueError(f"altitude {self.altitude_m} must be >= 0")


# A reference point is just a geographic position anchoring the local frame.
ReferencePoint = GeoPosition

NULL_ISLAND = GeoPosition(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class EcefVector:
    """Geocentric Cartesian position, meters from the Earth center."""

    x: float
    y: float
    z: float

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def __sub__(self, other: "EcefVector") -> "EcefVector":
        return EcefVector(self.x - other.x, self.y - other.y, self.z - other.z)

    def dot(self, other: "EcefVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def distance_to(self, other: "EcefVector") -> float:
        return (self - other).norm()


@dataclass(frozen=True)
class LinkGeometry:
    """Derived ground-to-platform geometry."""

    slant_range_m: float
    elevation_deg: float
    ground_position: EcefVector
    platform_position: EcefVector


def geographic_to_geocentric(p: GeoPosition) -> EcefVector:
    """Geographic -> ECEF on the spherical Earth."""
    lat = math.radians(p.latitude_deg)
    lon = math.radians(p.longitude_deg)
    r = EARTH_RADIUS_M + p.altitude_m
    return EcefVector(
        r * math.cos(lat) * math.cos(lon),
        r * math.cos(lat) * math.sin(lon),
        r * math.sin(lat),
    )


def geocentric_to_geographic(v: EcefVector) -> GeoPosition:
    """ECEF -> geographic.  Longitude at the poles is 0 by convention."""
    r = v.norm()
    if r < EARTH_RADIUS_M - 1e-6:
        raise BelowSurfaceError(f"norm {r:.3f} m is below the Earth surface")
    # atan2 stays well-conditioned near the poles, unlike asin(z/r)
    lat = math.degrees(math.atan2(v.z, math.hypot(v.x, v.y)))
    lon = math.degrees(math.atan2(v.y, v.x))
    if lon >= 180.0:
        lon -= 360.0
    alt = max(0.0, r - EARTH_RADIUS_M)
    return GeoPosition(lat, lon, alt)


def _enu_axes(ref: ReferencePoint):
    """Unit east/north/up vectors of the topocentric frame at ``ref``."""
    lat = math.radians(ref.latitude_deg)
    lon = math.radians(ref.longitude_deg)
    east = (-math.sin(lon), math.cos(lon), 0.0)
    north = (-math.sin(lat) * math.cos(lon), -math.sin(lat) * math.sin(lon), math.cos(lat))
    up = (math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat))
    return east, north, up


def geocentric_to_topocentric(v: EcefVector, ref: ReferencePoint) -> tuple[float, float, float]:
    """ECEF -> local (east, north, up) meters relative to ``ref``."""
    origin = geographic_to_geocentric(ref)
    d = v - origin
    east, north, up = _enu_axes(ref)
    return (
        d.x * east[0] + d.y * east[1] + d.z * east[2],
        d.x * north[0] + d.y * north[1] + d.z * north[2],
        d.x * up[0] + d.y * up[1] + d.z * up[2],
    )


def topocentric_to_geocentric(local: tuple[float, float, float], ref: ReferencePoint) -> EcefVector:
    origin = geographic_to_geocentric(ref)
    east, north, up = _enu_axes(ref)
    u, v, w = local
    return EcefVector(
        origin.x + u * east[0] + v * north[0] + w * up[0],
        origin.y + u * east[1] + v * north[1] + w * up[1],
        origin.z + u * east[2] + v * north[2] + w * up[2],
    )


def geographic_to_topocentric(p: GeoPosition, ref: ReferencePoint) -> tuple[float, float, float]:
    """Geographic -> local (u, v, w).  ``ref`` itself maps to the origin."""
    return geocentric_to_topocentric(geographic_to_geocentric(p), ref)


def topocentric_to_geographic(local: tuple[float, float, float], ref: ReferencePoint) -> GeoPosition:
    return geocentric_to_geographic(topocentric_to_geocentric(local, ref))


def elevation_angle(ground: EcefVector, platform: EcefVector) -> float:
    """Elevation of the platform above the ground node's horizon plane, degrees.

    90 minus the angle between the local zenith (radial direction at the
    ground node) and the ground->platform vector.  Negative values mean the
    platform sits below the horizon.
    """
    rg = ground.norm()
    if rg < EARTH_RADIUS_M - 1e-6:
        raise BelowSurfaceError("ground node below the Earth surface")
    los = platform - ground
    d = los.norm()
    if d == 0.0:
        raise UndefinedGeometryError("ground and platform positions coincide")
    cos_zenith = ground.dot(los) / (rg * d)
    cos_zenith = min(1.0, max(-1.0, cos_zenith))
    return 90.0 - math.degrees(math.acos(cos_zenith))


def slant_range(altitude_m: float, elevation_deg: float) -> float:
    """Ground-to-platform distance for a platform at ``altitude_m`` seen at
    ``elevation_deg`` on the spherical Earth."""
    if altitude_m <= 0.0:
        raise ValueError("altitude must be > 0")
    if not 0.0 < elevation_deg <= 90.0:
        raise ValueError("elevation must be in (0, 90]")
    r = EARTH_RADIUS_M
    h = altitude_m
    s = math.sin(math.radians(elevation_deg))
    return math.sqrt(r * r * s * s + 2.0 * r * h + h * h) - r * s


def link_geometry(ground: EcefVector, platform: EcefVector) -> LinkGeometry:
    """Bundle slant range and elevation for a ground/platform pair."""
    return LinkGeometry(
        slant_range_m=ground.distance_to(platform),
        elevation_deg=elevation_angle(ground, platform),
        ground_position=ground,
        platform_position=platform,
    )
