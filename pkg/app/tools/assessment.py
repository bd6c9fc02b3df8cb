"""
Single-point evaluation of a scenario at a given separation distance
"""

import logging

from pydantic import BaseModel, ConfigDict

from app.tools.link_budget import (
    LnbState,
    classify_lnb_state,
    interference_budget,
    max_permissible_interference,
    satellite_signal_power,
    total_received_power,
)
from app.tools.scenario import Scenario
from app.tools.solver import SeparationSolution, min_separation_distance
from app.utils.errors import InfeasibleScenarioError
from app.utils.units import DistanceKm, PowerLevel

logger = logging.getLogger(__name__)

FLAG_MAIN_LOBE = "main_lobe"
FLAG_INFEASIBLE = "infeasible"


class AssessmentResult(BaseModel):
    """Power levels, LNB state and margins at one distance"""

    model_config = ConfigDict(frozen=True)

    distance_km: float
    interference: PowerLevel
    satellite: PowerLevel
    total: PowerLevel
    lnb_state: LnbState
    off_axis_deg: float
    gain_dbi: float
    margin_to_protection_db: float
    margin_to_linear_db: float
    margin_to_saturation_db: float
    separation: SeparationSolution | None
    flags: tuple[str, ...] = ()

    @property
    def min_distance_km(self) -> float | None:
        return self.separation.distance_km if self.separation else None


def assess(scenario: Scenario, d: DistanceKm) -> AssessmentResult:
    """
    Evaluate every received power and margin for a base station at distance d.

    Margins are positive when the level is below the threshold: the protection
    criterion is checked against the interference alone, the LNB thresholds
    against the total input power.
    """
    budget = interference_budget(
        scenario.bs_eirp, scenario.environment, scenario.earth_station, scenario.geometry, d
    )
    csat = satellite_signal_power(scenario.satellite)
    total = total_received_power(budget.power, csat)
    lnb = scenario.lnb

    flags: list[str] = []
    if budget.main_lobe_adjacent:
        flags.append(FLAG_MAIN_LOBE)
    try:
        separation = min_separation_distance(scenario)
    except InfeasibleScenarioError as e:
        logger.warning(f"No coordination distance: {e}")
        separation = None
        flags.append(FLAG_INFEASIBLE)

    return AssessmentResult(
        distance_km=d.value,
        interference=budget.power,
        satellite=csat,
        total=total,
        lnb_state=classify_lnb_state(total, lnb),
        off_axis_deg=budget.off_axis.value,
        gain_dbi=budget.gain.value,
        margin_to_protection_db=max_permissible_interference(scenario.protection) - budget.power,
        margin_to_linear_db=lnb.linear_limit - total,
        margin_to_saturation_db=lnb.saturation_limit - total,
        separation=separation,
        flags=tuple(flags),
    )
