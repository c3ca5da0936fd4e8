"""Antenna patterns: exact circular-aperture (Bessel) and 3GPP UPA element.

The circular-aperture pattern uses an exact first-order Bessel function
(ascending series + Hankel asymptotic expansion, ~1e-12 absolute error),
not the parabolic main-lobe approximation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT_M_S = 299_792_458.0

# First positive zero of J1, for reference in tests and null placement.
J1_FIRST_ZERO = 3.8317059702075125


class OutOfPatternError(ValueError):
    """Angle behind the front hemisphere of a circular-aperture antenna."""


def _j1_series(x: float) -> float:
    # Ascending series: sum_m (-1)^m (x/2)^(2m+1) / (m! (m+1)!)
    half = x / 2.0
    term = half
    total = term
    m = 0
    while True:
        m += 1
        term *= -half * half / (m * (m + 1))
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            return total


def _j1_asymptotic(x: float) -> float:
    # Hankel expansion for large |x|: J1 = sqrt(2/(pi x)) (P cos X - Q sin X),
    # X = x - 3*pi/4, with P, Q asymptotic series in 1/x.
    ax = abs(x)
    mu = 4.0  # 4 * nu^2 with nu = 1
    p = 1.0
    q = 0.0
    term = 1.0
    k = 0
    while True:
        # a_{k+1} = a_k * (mu - (2k+1)^2) / ((k+1) * 8x)
        term *= (mu - (2 * k + 1) ** 2) / ((k + 1) * 8.0 * ax)
        k += 1
        contrib = term if k % 4 in (0, 1) else -term
        if k % 2 == 1:
            q += contrib
        else:
            p += contrib
        if abs(term) < 1e-18:
            break
        if k > 30:
            break
    chi = ax - 0.75 * math.pi
    val = math.sqrt(2.0 / (math.pi * ax)) * (p * math.cos(chi) - q * math.sin(chi))
    return -val if x < 0.0 else val


def bessel_j1(x: float) -> float:
    """First-kind, first-order Bessel function."""
    if abs(x) < 15.0:
        return _j1_series(x)
    return _j1_asymptotic(x)


@dataclass(frozen=True)
class CircularApertureAntenna:
    """Reflector antenna described by its aperture radius and frequency.

    ``boresight`` is a unit vector in the frame the caller works in;
    orientation changes produce a new (immutable) instance.
    """

    aperture_radius_m: float
    frequency_ghz: float
    peak_gain_dbi: float
    boresight: tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if self.aperture_radius_m <= 0.0:
            raise ValueError("aperture radius must be > 0")
        n = math.sqrt(sum(c * c for c in self.boresight))
        if not math.isclose(n, 1.0, rel_tol=1e-9):
            object.__setattr__(self, "boresight",
                               tuple(c / n for c in self.boresight))

    def with_boresight(self, direction: tuple[float, float, float]) -> "CircularApertureAntenna":
        return CircularApertureAntenna(self.aperture_radius_m, self.frequency_ghz,
                                       self.peak_gain_dbi, direction)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi * self.frequency_ghz * 1e9 / SPEED_OF_LIGHT_M_S


def circular_aperture_gain(theta_deg: float, antenna: CircularApertureAntenna) -> float:
    """Normalized power gain in [0, 1] at ``theta_deg`` off boresight.

    1 exactly at boresight, else 4 |J1(k l sin t) / (k l sin t)|^2; defined
    on the front hemisphere only.
    """
    if abs(theta_deg) > 90.0:
        raise OutOfPatternError(f"theta {theta_deg} outside the front hemisphere")
    if theta_deg == 0.0:
        return 1.0
    x = antenna.wavenumber * antenna.aperture_radius_m * math.sin(math.radians(abs(theta_deg)))
    if x == 0.0:
        return 1.0
    ratio = bessel_j1(x) / x
    return 4.0 * ratio * ratio


def peak_gain_from_aperture(aperture_radius_m: float, f_ghz: float,
                            efficiency: float = 0.6) -> float:
    """Absolute boresight gain, dBi, for a circular aperture of given radius."""
    if aperture_radius_m <= 0.0 or f_ghz <= 0.0:
        raise ValueError("aperture radius and frequency must be > 0")
    if not 0.0 < efficiency <= 1.0:
        raise ValueError("efficiency must be in (0, 1]")
    wavelength = SPEED_OF_LIGHT_M_S / (f_ghz * 1e9)
    return 10.0 * math.log10(efficiency * (2.0 * math.pi * aperture_radius_m / wavelength) ** 2)


def aperture_radius_for_gain(gain_dbi: float, f_ghz: float,
                             efficiency: float = 0.6) -> float:
    """Invert peak_gain_from_aperture; used to size antennas from quoted gains."""
    wavelength = SPEED_OF_LIGHT_M_S / (f_ghz * 1e9)
    return wavelength / (2.0 * math.pi) * math.sqrt(10.0 ** (gain_dbi / 10.0) / efficiency)


def effective_offaxis_angle(boresight: tuple[float, float, float],
                            target_direction: tuple[float, float, float]) -> float:
    """Angle between the boresight and a target direction, degrees in [0, 180]."""
    nb = math.sqrt(sum(c * c for c in boresight))
    nt = math.sqrt(sum(c * c for c in target_direction))
    if nb == 0.0 or nt == 0.0:
        raise ValueError("zero-length direction vector")
    dot = sum(b * t for b, t in zip(boresight, target_direction)) / (nb * nt)
    return math.degrees(math.acos(min(1.0, max(-1.0, dot))))


@dataclass(frozen=True)
class UpaAntenna:
    """3GPP planar-array element pattern parameters (TR 38.901 defaults)."""

    element_max_gain_dbi: float = 8.0
    vertical_hpbw_deg: float = 65.0
    horizontal_hpbw_deg: float = 65.0
    side_lobe_floor_db: float = 30.0
    rows: int = 1
    cols: int = 1

    def __post_init__(self):
        if not 0.0 < self.vertical_hpbw_deg < 180.0:
            raise ValueError("vertical beamwidth outside (0, 180)")
        if not 0.0 < self.horizontal_hpbw_deg < 180.0:
            raise ValueError("horizontal beamwidth outside (0, 180)")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("array size must be at least 1x1")


def upa_element_gain(theta_deg: float, phi_deg: float, antenna: UpaAntenna) -> float:
    """Element gain, dBi; theta is zenith angle (90 = boresight), phi azimuth."""
    if not 0.0 <= theta_deg <= 180.0:
        raise ValueError("theta outside [0, 180]")
    if not -180.0 <= phi_deg < 180.0:
        raise ValueError("phi outside [-180, 180)")
    a_v = min(12.0 * ((theta_deg - 90.0) / antenna.vertical_hpbw_deg) ** 2,
              antenna.side_lobe_floor_db)
    a_h = min(12.0 * (phi_deg / antenna.horizontal_hpbw_deg) ** 2,
              antenna.side_lobe_floor_db)
    attenuation = min(a_v + a_h, antenna.side_lobe_floor_db)
    return antenna.element_max_gain_dbi - attenuation
