"""
Logarithmic power and unit value types

Every quantity is an immutable pydantic record carrying its unit in its type,
so a dBm level cannot be subtracted from a dBW level or a loss added to a
power by accident. Values are kept in double precision and never rounded;
rounding happens only when a report is written.
"""

import math
from collections.abc import Iterable
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import constants

from app.utils.errors import DegenerateAggregationError, UnitMismatchError

DBM_PER_DBW = 30.0


def to_db(ratio: float) -> float:
    """Express a positive linear ratio in decibels"""
    if ratio <= 0:
        raise ValueError(f"Cannot express non-positive ratio {ratio} in dB")
    return 10.0 * math.log10(ratio)


def from_db(db: float) -> float:
    """Convert decibels back to a linear ratio"""
    return 10.0 ** (db / 10.0)


class _Quantity(BaseModel):
    """Frozen scalar record that also accepts its fields positionally"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    def __init__(self, *args: Any, **data: Any) -> None:
        names = list(type(self).model_fields)
        if len(args) > len(names):
            raise TypeError(f"{type(self).__name__} takes at most {len(names)} positional values")
        for name, arg in zip(names, args):
            if name in data:
                raise TypeError(f"{type(self).__name__} got multiple values for '{name}'")
            data[name] = arg
        super().__init__(**data)

    def __float__(self) -> float:
        return float(self.value)  # type: ignore[attr-defined]


class PowerReference(str, Enum):
    DBM = "dBm"
    DBW = "dBW"


class GainDbi(_Quantity):
    """Antenna gain relative to isotropic; may be negative"""

    value: float

    def __str__(self) -> str:
        return f"{self.value:.2f} dBi"


class AttenuationDb(_Quantity):
    """A loss or isolation in dB; never negative"""

    value: float = Field(ge=0.0)

    def __add__(self, other: object) -> "AttenuationDb":
        if isinstance(other, AttenuationDb):
            return AttenuationDb(self.value + other.value)
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.value:.2f} dB"


class PowerLevel(_Quantity):
    """A power in dB relative to one milliwatt or one watt"""

    value: float
    reference: PowerReference = PowerReference.DBM

    @classmethod
    def dbm(cls, value: float) -> "PowerLevel":
        return cls(value, PowerReference.DBM)

    @classmethod
    def dbw(cls, value: float) -> "PowerLevel":
        return cls(value, PowerReference.DBW)

    @classmethod
    def from_watts(cls, watts: float, reference: PowerReference = PowerReference.DBM) -> "PowerLevel":
        level = cls.dbw(to_db(watts))
        return to_dbm(level) if reference == PowerReference.DBM else level

    def to_watts(self) -> float:
        return from_db(to_dbw(self).value)

    def shifted(self, delta_db: float) -> "PowerLevel":
        """Same reference, value moved by a dimensionless dB delta"""
        return PowerLevel(self.value + delta_db, self.reference)

    def in_reference(self, reference: PowerReference) -> "PowerLevel":
        return to_dbm(self) if reference == PowerReference.DBM else to_dbw(self)

    def _same_reference(self, other: "PowerLevel") -> None:
        if other.reference != self.reference:
            raise UnitMismatchError(
                f"Cannot combine {self.reference.value} with {other.reference.value}; convert first"
            )

    def __add__(self, other: object) -> "PowerLevel":
        if isinstance(other, GainDbi):
            return self.shifted(other.value)
        return NotImplemented

    def __sub__(self, other: object) -> Any:
        if isinstance(other, (AttenuationDb, GainDbi)):
            return self.shifted(-other.value)
        if isinstance(other, PowerLevel):
            self._same_reference(other)
            return self.value - other.value
        return NotImplemented

    def __lt__(self, other: "PowerLevel") -> bool:
        return self.value < other.in_reference(self.reference).value

    def __le__(self, other: "PowerLevel") -> bool:
        return self.value <= other.in_reference(self.reference).value

    def __gt__(self, other: "PowerLevel") -> bool:
        return self.value > other.in_reference(self.reference).value

    def __ge__(self, other: "PowerLevel") -> bool:
        return self.value >= other.in_reference(self.reference).value

    def __str__(self) -> str:
        return f"{self.value:.2f} {self.reference.value}"


class FrequencyGHz(_Quantity):
    value: float = Field(gt=0.0)

    @property
    def hz(self) -> float:
        return self.value * 1e9

    @property
    def wavelength_m(self) -> float:
        return constants.c / self.hz


class DistanceKm(_Quantity):
    value: float = Field(ge=0.0)

    @property
    def meters(self) -> float:
        return self.value * 1e3


class LengthM(_Quantity):
    value: float = Field(ge=0.0)


class AngleDeg(_Quantity):
    """An angle in degrees, normalised into [0, 360)"""

    value: float

    @field_validator("value")
    @classmethod
    def _wrap(cls, v: float) -> float:
        wrapped = v % 360.0
        return 0.0 if wrapped == 360.0 else wrapped

    @property
    def radians(self) -> float:
        return math.radians(self.value)


def to_dbw(p: PowerLevel) -> PowerLevel:
    if p.reference == PowerReference.DBW:
        return p
    return PowerLevel(p.value - DBM_PER_DBW, PowerReference.DBW)


def to_dbm(p: PowerLevel) -> PowerLevel:
    if p.reference == PowerReference.DBM:
        return p
    return PowerLevel(p.value + DBM_PER_DBW, PowerReference.DBM)


def power_sum(terms: Iterable[PowerLevel]) -> PowerLevel:
    """
    Add powers in the linear domain and return the total in dB.

    Args:
        terms: levels sharing one reference

    Returns:
        10*log10 of the summed linear powers, in the common reference
    """
    levels = list(terms)
    if not levels:
        raise DegenerateAggregationError("power_sum needs at least one term")
    reference = levels[0].reference
    for level in levels[1:]:
        levels[0]._same_reference(level)

    values = np.array([level.value for level in levels], dtype=float)
    peak = float(values.max())
    # fsum keeps the result independent of term order
    linear = math.fsum(np.power(10.0, (values - peak) / 10.0).tolist())
    return PowerLevel(peak + 10.0 * math.log10(linear), reference)
