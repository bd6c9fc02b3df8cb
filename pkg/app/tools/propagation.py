"""
Path loss along the base station to earth station interference path

Line-of-sight free-space loss plus a single receiver-end clutter term and an
optional gaseous absorption pass-through.
"""

import logging
import math
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import config
from app.utils.errors import DegenerateClutterError, UndefinedLogarithmError
from app.utils.units import AttenuationDb, DistanceKm, FrequencyGHz

logger = logging.getLogger(__name__)

FSPL_CONSTANT_DB = 92.44


class ClutterName(str, Enum):
    VILLAGE_CENTRE = "VillageCentre"
    SUBURBAN = "Suburban"
    DENSE_SUBURBAN = "DenseSuburban"
    URBAN = "Urban"
    DENSE_URBAN = "DenseUrban"
    HIGH_RISE_URBAN = "HighRiseUrban"
    INDUSTRIAL_ZONE = "IndustrialZone"
    CUSTOM = "Custom"


# (nominal clutter height h_a in m, nominal distance d_k in km)
NOMINAL_CLUTTER = {
    ClutterName.VILLAGE_CENTRE: (5.0, 0.07),
    ClutterName.SUBURBAN: (9.0, 0.025),
    ClutterName.DENSE_SUBURBAN: (12.0, 0.02),
    ClutterName.URBAN: (20.0, 0.02),
    ClutterName.DENSE_URBAN: (25.0, 0.02),
    ClutterName.HIGH_RISE_URBAN: (35.0, 0.02),
    ClutterName.INDUSTRIAL_ZONE: (20.0, 0.05),
}


class ClutterCategory(BaseModel):
    """A clutter category with its nominal height and distance"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: ClutterName
    nominal_height_m: float = Field(gt=0.0)
    nominal_distance_km: float = Field(gt=0.0)

    @model_validator(mode="before")
    @classmethod
    def _fill_nominal(cls, data: Any) -> Any:
        if isinstance(data, (str, ClutterName)):
            data = {"name": data}
        if not isinstance(data, dict):
            return data
        name = ClutterName(data.get("name", ClutterName.CUSTOM))
        if name == ClutterName.CUSTOM:
            if "nominal_height_m" not in data or "nominal_distance_km" not in data:
                raise ValueError("Custom clutter needs nominal_height_m and nominal_distance_km")
            return data
        height, distance = NOMINAL_CLUTTER[name]
        given = (data.get("nominal_height_m", height), data.get("nominal_distance_km", distance))
        if given != (height, distance):
            raise ValueError(
                f"{name.value} is fixed at h_a={height} m, d_k={distance} km; use Custom to override"
            )
        # unknown keys stay in so extra="forbid" reports them
        return {**data, "name": name, "nominal_height_m": height, "nominal_distance_km": distance}

    @classmethod
    def of(cls, name: ClutterName | str) -> "ClutterCategory":
        return cls.model_validate(name)

    @classmethod
    def custom(cls, nominal_height_m: float, nominal_distance_km: float) -> "ClutterCategory":
        return cls(
            name=ClutterName.CUSTOM,
            nominal_height_m=nominal_height_m,
            nominal_distance_km=nominal_distance_km,
        )


class PropagationEnvironment(BaseModel):
    """Interference path environment"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    frequency_ghz: float = Field(default=config.INTERFERENCE_FREQUENCY_GHZ, gt=0.0)
    clutter: ClutterCategory = Field(
        default_factory=lambda: ClutterCategory.of(config.DEFAULT_CLUTTER)
    )
    gaseous_absorption_db: float = Field(default=0.0, ge=0.0)
    antenna_height_m: float = Field(default=config.ES_ANTENNA_HEIGHT_M, ge=0.0)

    @property
    def frequency(self) -> FrequencyGHz:
        return FrequencyGHz(self.frequency_ghz)

    @property
    def gaseous_absorption(self) -> AttenuationDb:
        return AttenuationDb(self.gaseous_absorption_db)


def free_space_path_loss(f: FrequencyGHz, d: DistanceKm) -> AttenuationDb:
    """
    Free-space loss 92.44 + 20log10(f_GHz) + 20log10(d_km).

    Args:
        f: carrier frequency
        d: path length

    Returns:
        Free-space path loss

    Raises:
        UndefinedLogarithmError: f or d not positive, or a path so short that
            the formula falls below 0 dB
    """
    if f.value <= 0 or d.value <= 0:
        raise UndefinedLogarithmError(
            f"Free-space loss undefined for f={f.value} GHz, d={d.value} km"
        )
    loss = FSPL_CONSTANT_DB + 20.0 * math.log10(f.value) + 20.0 * math.log10(d.value)
    if loss < 0:
        raise UndefinedLogarithmError(
            f"Free-space loss {loss:.2f} dB below 0 for f={f.value} GHz, d={d.value} km; "
            "path is inside the near field"
        )
    return AttenuationDb(loss)


def clutter_frequency_factor(f: FrequencyGHz) -> float:
    return 0.25 + 0.375 * (1.0 + float(np.tanh(7.5 * (f.value - 0.5))))


def raw_clutter_loss(env: PropagationEnvironment) -> float:
    """Clutter loss before clamping; slightly negative above the clutter"""
    clutter = env.clutter
    if clutter.nominal_height_m <= 0:
        raise DegenerateClutterError(f"Clutter category {clutter.name.value} has zero nominal height")
    ratio = env.antenna_height_m / clutter.nominal_height_m
    return (
        10.25
        * clutter_frequency_factor(env.frequency)
        * math.exp(-clutter.nominal_distance_km)
        * (1.0 - float(np.tanh(6.0 * (ratio - 0.625))))
        - 0.33
    )


def clutter_loss(env: PropagationEnvironment) -> AttenuationDb:
    """
    Receiver-end clutter loss for the environment's category and antenna height.

    Negative values (antenna above the clutter) are clamped to 0 dB.
    """
    raw = raw_clutter_loss(env)
    if raw < 0:
        logger.debug(f"Clutter loss {raw:.3f} dB for {env.clutter.name.value} clamped to 0")
    return AttenuationDb(max(raw, 0.0))


def total_path_attenuation(env: PropagationEnvironment, d: DistanceKm) -> AttenuationDb:
    """Free-space loss plus gaseous absorption plus clutter loss"""
    return free_space_path_loss(env.frequency, d) + env.gaseous_absorption + clutter_loss(env)
