"""
Earth station receive antenna: off-axis geometry and the FSS gain envelope
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.config import config
from app.utils.units import AngleDeg, DistanceKm, FrequencyGHz, GainDbi

logger = logging.getLogger(__name__)

FLAT_SEGMENT_START_DEG = 48.0
FLAT_SEGMENT_GAIN_DBI = -10.0


class GeometryInput(BaseModel):
    """Relative placement of the base station and the earth station boresight

    With ``pin_to_elevation`` the interference path is taken as horizontal
    (equal heights, flat earth, so epsilon = 0) and the off-axis angle reduces
    to the elevation when the dish points in azimuth at the base station.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    elevation_deg: float = Field(default=config.ES_ELEVATION_DEG, ge=0.0, le=90.0)
    azimuth_offset_deg: float = 0.0
    es_height_m: float = Field(default=config.ES_ANTENNA_HEIGHT_M, ge=0.0)
    bs_height_m: float = Field(default=config.BS_ANTENNA_HEIGHT_M, ge=0.0)
    distance_km: float = Field(default=1.0, gt=0.0)
    effective_earth_radius_m: float = Field(default=config.EFFECTIVE_EARTH_RADIUS_M, gt=0.0)
    pin_to_elevation: bool = True

    def at_distance(self, d: DistanceKm) -> "GeometryInput":
        return self.model_copy(update={"distance_km": d.value})


class DishAntenna(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    diameter_m: float = Field(gt=0.0)
    wavelength_m: float = Field(gt=0.0)

    @classmethod
    def for_frequency(cls, diameter_m: float, f: FrequencyGHz) -> "DishAntenna":
        return cls(diameter_m=diameter_m, wavelength_m=f.wavelength_m)

    @property
    def d_over_lambda(self) -> float:
        return self.diameter_m / self.wavelength_m


class EnvelopeGain(GainDbi):
    """Envelope gain; flagged when the angle fell inside phi_min and was clamped"""

    main_lobe_adjacent: bool = False


def elevation_of_path(g: GeometryInput) -> float:
    """Elevation epsilon of the path towards the base station, in radians"""
    d_m = g.distance_km * 1e3
    return (g.es_height_m - g.bs_height_m) / d_m - d_m / (2.0 * g.effective_earth_radius_m)


def _angle_between(alpha: float, epsilon: float, theta: float) -> float:
    # atan2 of |b x v| and b . v stays accurate near boresight where arccos does not
    boresight = np.array([math.cos(alpha), 0.0, math.sin(alpha)])
    arrival = np.array(
        [math.cos(epsilon) * math.cos(theta), math.cos(epsilon) * math.sin(theta), math.sin(epsilon)]
    )
    cross = float(np.linalg.norm(np.cross(boresight, arrival)))
    dot = float(np.dot(boresight, arrival))
    return math.degrees(math.atan2(cross, dot))


def off_axis_angle(g: GeometryInput) -> AngleDeg:
    """
    Angle between the interference arrival direction and the dish main lobe.

    Evaluates arccos(cos a cos e cos t + sin a sin e) with a the elevation,
    e the path elevation and t the azimuth offset.

    Returns:
        Off-axis angle in [0, 180] degrees
    """
    return AngleDeg(
        _angle_between(
            math.radians(g.elevation_deg),
            elevation_of_path(g),
            math.radians(g.azimuth_offset_deg),
        )
    )


def effective_off_axis_angle(g: GeometryInput, d: DistanceKm) -> AngleDeg:
    """Off-axis angle at distance d, honouring the pinned simplification"""
    if g.pin_to_elevation:
        return AngleDeg(
            _angle_between(math.radians(g.elevation_deg), 0.0, math.radians(g.azimuth_offset_deg))
        )
    return off_axis_angle(g.at_distance(d))


def phi_min(a: DishAntenna) -> AngleDeg:
    """Smallest angle for which the side-lobe envelope is defined"""
    ratio = a.d_over_lambda
    if ratio >= 50.0:
        return AngleDeg(max(1.0, 100.0 / ratio))
    return AngleDeg(max(2.0, 114.0 * ratio**-1.09))


def _envelope(phi_deg: float) -> float:
    if phi_deg >= FLAT_SEGMENT_START_DEG:
        return FLAT_SEGMENT_GAIN_DBI
    return 32.0 - 25.0 * math.log10(phi_deg)


def fss_off_axis_gain(phi: AngleDeg, a: DishAntenna) -> EnvelopeGain:
    """
    Receive gain of the earth station towards an interferer at angle phi.

    32 - 25log10(phi) dBi between phi_min and 48 degrees, -10 dBi from 48 to
    180 degrees. Inside phi_min the pattern is undefined, so the value at
    phi_min is returned and the result is flagged as main-lobe adjacent.
    """
    if phi.value > 180.0:
        raise ValueError(f"Off-axis angle must lie in [0, 180], got {phi.value}")
    lower = phi_min(a).value
    if phi.value < lower:
        logger.warning(
            f"Off-axis angle {phi.value:.3f} deg inside phi_min {lower:.3f} deg; gain clamped"
        )
        return EnvelopeGain(_envelope(lower), True)
    return EnvelopeGain(_envelope(phi.value), False)


def envelope_bounds(a: DishAntenna) -> tuple[float, float]:
    """Lowest and highest gain the envelope can return for this dish, in dBi"""
    lower = phi_min(a).value
    highest = _envelope(lower)
    if lower < FLAT_SEGMENT_START_DEG:
        # the sloped segment ends just under the flat floor
        return min(FLAT_SEGMENT_GAIN_DBI, 32.0 - 25.0 * math.log10(FLAT_SEGMENT_START_DEG)), highest
    return FLAT_SEGMENT_GAIN_DBI, highest


def envelope_gain_dbi(phi_deg: float, a: DishAntenna) -> float:
    """Envelope gain as a plain float, clamped at phi_min without logging"""
    return _envelope(max(phi_deg, phi_min(a).value))
