"""
Utility modules for fsscoex
"""

from .errors import (
    CoexistenceError,
    DegenerateAggregationError,
    DegenerateClutterError,
    InfeasibleScenarioError,
    ScenarioValidationError,
    UndefinedLogarithmError,
    UnitMismatchError,
    UnknownFigureError,
)
from .units import (
    AngleDeg,
    AttenuationDb,
    DistanceKm,
    FrequencyGHz,
    GainDbi,
    LengthM,
    PowerLevel,
    PowerReference,
    power_sum,
    to_dbm,
    to_dbw,
)

__all__ = [
    "AngleDeg",
    "AttenuationDb",
    "DistanceKm",
    "FrequencyGHz",
    "GainDbi",
    "LengthM",
    "PowerLevel",
    "PowerReference",
    "power_sum",
    "to_dbm",
    "to_dbw",
    "CoexistenceError",
    "DegenerateAggregationError",
    "DegenerateClutterError",
    "InfeasibleScenarioError",
    "ScenarioValidationError",
    "UndefinedLogarithmError",
    "UnitMismatchError",
    "UnknownFigureError",
]
