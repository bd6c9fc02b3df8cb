"""
Parameter sweeps over a fixed scenario
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import config
from app.tools.assessment import assess
from app.tools.propagation import ClutterName
from app.tools.report import ReportRow, rows_to_frame
from app.tools.scenario import Scenario
from app.utils.units import DistanceKm

logger = logging.getLogger(__name__)


class SweptParameter(str, Enum):
    DISTANCE = "Distance"
    EIRP = "Eirp"
    OFF_AXIS_ANGLE = "OffAxisAngle"
    FILTER_ATTENUATION = "FilterAttenuation"
    CLUTTER_CATEGORY = "ClutterCategory"
    SHIELDING_ATTENUATION = "ShieldingAttenuation"
    EARTH_STATION_HEIGHT = "EarthStationHeight"


# how each swept value is applied to the fixed scenario
_APPLY: dict[SweptParameter, Callable[[Scenario, Any], Scenario]] = {
    SweptParameter.DISTANCE: lambda s, v: s,
    SweptParameter.EIRP: lambda s, v: s.with_eirp(float(v)),
    SweptParameter.OFF_AXIS_ANGLE: lambda s, v: s.with_off_axis(float(v)),
    SweptParameter.FILTER_ATTENUATION: lambda s, v: s.with_filter(float(v)),
    SweptParameter.CLUTTER_CATEGORY: lambda s, v: s.with_clutter(v),
    SweptParameter.SHIELDING_ATTENUATION: lambda s, v: s.with_shielding(float(v)),
    SweptParameter.EARTH_STATION_HEIGHT: lambda s, v: s.with_es_height(float(v)),
}


class SweepSpec(BaseModel):
    """What to vary, over which values, around which scenario

    Non-distance sweeps evaluate the powers at ``evaluation_distance_km``.
    An Eirp value is the total in-band EIRP of a single-carrier station.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    swept_parameter: SweptParameter
    values: tuple[float | str, ...]
    fixed_scenario: Scenario = Field(default_factory=Scenario)
    evaluation_distance_km: float = Field(default=10.0, gt=0.0)

    @model_validator(mode="after")
    def _check_values(self) -> "SweepSpec":
        if not self.values:
            raise ValueError("a sweep needs at least one value")
        if self.swept_parameter == SweptParameter.CLUTTER_CATEGORY:
            for value in self.values:
                ClutterName(value)
            return self
        try:
            numbers = np.array([float(v) for v in self.values])
        except (TypeError, ValueError):
            raise ValueError(f"{self.swept_parameter.value} values must be numeric")
        steps = np.diff(numbers)
        if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("sweep values must be strictly monotone")
        if self.swept_parameter == SweptParameter.DISTANCE and numbers.min() <= 0:
            raise ValueError("distances must be positive")
        if self.swept_parameter == SweptParameter.OFF_AXIS_ANGLE:
            if numbers.min() < 0 or numbers.max() > 180:
                raise ValueError("off-axis angles must lie in [0, 180] degrees")
            if not self.fixed_scenario.geometry.pin_to_elevation:
                raise ValueError(
                    "an OffAxisAngle sweep needs geometry.pin_to_elevation; "
                    "sweep the elevation through the scenario instead"
                )
        return self


def _evaluate(item: tuple[Any, Scenario, DistanceKm]) -> ReportRow:
    value, scenario, distance = item
    return ReportRow.from_assessment(value, assess(scenario, distance))


def run_sweep(spec: SweepSpec) -> pd.DataFrame:
    """
    Evaluate the scenario once per swept value.

    Args:
        spec: sweep definition

    Returns:
        One report row per value, in input order
    """
    apply = _APPLY[spec.swept_parameter]
    # build every variant first so an invalid value fails before any row exists
    items = []
    for value in spec.values:
        distance = (
            float(value) if spec.swept_parameter == SweptParameter.DISTANCE
            else spec.evaluation_distance_km
        )
        items.append((value, apply(spec.fixed_scenario, value), DistanceKm(distance)))

    logger.info(f"Sweeping {spec.swept_parameter.value} over {len(items)} values")
    with ThreadPoolExecutor(max_workers=config.MAX_WORKERS) as executor:
        rows = list(executor.map(_evaluate, items))
    logger.info(f"Sweep of {spec.swept_parameter.value} finished")
    return rows_to_frame(rows)


def sweep_grid(start: float, stop: float, steps: int, log: bool = False) -> list[float]:
    """Evenly spaced sweep values, geometric when ``log`` is set"""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if log:
        if start <= 0 or stop <= 0:
            raise ValueError("log-spaced sweeps need positive bounds")
        return np.geomspace(start, stop, steps).tolist()
    return np.linspace(start, stop, steps).tolist()
