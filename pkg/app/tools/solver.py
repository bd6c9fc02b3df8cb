"""
Minimum separation distance and required isolation

The interference budget is inverted in closed form for the distance:

    20log10(d_km) = EIRP - I_limit - 92.44 - 20log10(f_GHz) - A_g - A_h + G(phi) - R - F

Clutter loss does not depend on distance, so only the off-axis gain can tie
the right-hand side to d. With the pinned geometry it does not, and one
evaluation is exact. Otherwise the gain envelope bounds the root in
log10(d); the bracket is scanned from the far end and the outermost crossing
is refined with Brent's method.
"""

import logging
import math
from functools import partial

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from app.tools.antenna import (
    DishAntenna,
    effective_off_axis_angle,
    envelope_bounds,
    envelope_gain_dbi,
    fss_off_axis_gain,
)
from app.tools.link_budget import (
    LimitKind,
    binding_limit,
    limit_with_satellite,
    satellite_signal_power,
)
from app.tools.propagation import FSPL_CONSTANT_DB, clutter_loss
from app.tools.scenario import Scenario
from app.utils.errors import InfeasibleScenarioError
from app.utils.units import AttenuationDb, DistanceKm, PowerLevel, to_dbm

logger = logging.getLogger(__name__)

ROOT_SCAN_POINTS = 2048
ROOT_XTOL = 1e-14
# widens the bracket in log10(d) past rounding at its ends
BRACKET_MARGIN = 1e-6


class SeparationSolution(BaseModel):
    """Coordination distance for one scenario and limit"""

    model_config = ConfigDict(frozen=True)

    distance_km: float = Field(gt=0.0)
    binding_limit: PowerLevel
    limit_kind: LimitKind
    main_lobe_flag: bool = False
    off_axis_deg: float
    gain_dbi: float
    iterations: int = 1

    @property
    def distance(self) -> DistanceKm:
        return DistanceKm(self.distance_km)


def separation_limit(scenario: Scenario) -> tuple[PowerLevel, LimitKind]:
    """Applicable limit, reduced by the satellite carriers when they are counted"""
    limit, kind = binding_limit(scenario.kind, scenario.protection, scenario.lnb)
    if scenario.include_satellite_carriers and kind == LimitKind.LNB_LINEAR:
        limit = limit_with_satellite(limit, satellite_signal_power(scenario.satellite))
    return to_dbm(limit), kind


def _rhs_without_isolation(scenario: Scenario, limit: PowerLevel, gain_dbi: float) -> float:
    es = scenario.earth_station
    return (
        to_dbm(scenario.bs_eirp).value
        - to_dbm(limit).value
        - FSPL_CONSTANT_DB
        - 20.0 * math.log10(scenario.frequency.value)
        - scenario.environment.gaseous_absorption_db
        - clutter_loss(scenario.environment).value
        + gain_dbi
        - es.frequency_offset_factor.value
    )


def _distance_from_rhs(rhs: float) -> float:
    if not math.isfinite(rhs):
        raise InfeasibleScenarioError(f"Separation equation has non-finite right-hand side {rhs}")
    try:
        distance = 10.0 ** (rhs / 20.0)
    except OverflowError:
        raise InfeasibleScenarioError(f"Separation distance overflows for rhs {rhs:.1f} dB")
    if not math.isfinite(distance) or distance <= 0:
        raise InfeasibleScenarioError(f"No finite separation distance for rhs {rhs:.1f} dB")
    return distance


def _excess_db(
    scenario: Scenario, limit: PowerLevel, dish: DishAntenna, isolation: float, log_d: float
) -> float:
    """Interference above the limit, in dB, at d = 10**log_d km"""
    phi = effective_off_axis_angle(scenario.geometry, DistanceKm(10.0**log_d))
    gain = envelope_gain_dbi(phi.value, dish)
    return _rhs_without_isolation(scenario, limit, gain) - isolation - 20.0 * log_d


def _outermost_root(excess, lower: float, upper: float) -> tuple[float, int]:
    """
    Largest root of ``excess`` on [lower, upper].

    ``excess`` must be negative at ``upper`` and non-negative at ``lower``.
    The interval is scanned downwards so that the crossing beyond which the
    interference stays under the limit is the one refined.
    """
    grid = np.linspace(upper, lower, ROOT_SCAN_POINTS)
    previous = float(grid[0])
    if excess(previous) >= 0:
        return previous, 0
    for point in grid[1:]:
        point = float(point)
        value = excess(point)
        if value == 0:
            return point, 0
        if value > 0:
            root, result = brentq(excess, point, previous, xtol=ROOT_XTOL, full_output=True)
            if not result.converged:
                raise InfeasibleScenarioError(
                    f"Separation distance search did not converge: {result.flag}"
                )
            return root, result.iterations
        previous = point
    raise InfeasibleScenarioError(
        f"No separation distance between {10.0**lower:.6g} and {10.0**upper:.6g} km"
    )


def distance_for_limit(
    scenario: Scenario, limit: PowerLevel, kind: LimitKind = LimitKind.LNB_LINEAR
) -> SeparationSolution:
    """
    Distance at which the interference power falls to ``limit``.

    Raises:
        InfeasibleScenarioError: no finite distance satisfies the limit
    """
    isolation = scenario.earth_station.isolation.value
    dish = scenario.dish
    if scenario.geometry.pin_to_elevation:
        phi = effective_off_axis_angle(scenario.geometry, DistanceKm(1.0))
        gain = fss_off_axis_gain(phi, dish)
        distance = _distance_from_rhs(
            _rhs_without_isolation(scenario, limit, gain.value) - isolation
        )
        iterations = 1
    else:
        lowest, highest = envelope_bounds(dish)
        nearest = _distance_from_rhs(_rhs_without_isolation(scenario, limit, lowest) - isolation)
        farthest = _distance_from_rhs(_rhs_without_isolation(scenario, limit, highest) - isolation)
        log_d, iterations = _outermost_root(
            partial(_excess_db, scenario, limit, dish, isolation),
            math.log10(nearest) - BRACKET_MARGIN,
            math.log10(farthest) + BRACKET_MARGIN,
        )
        distance = 10.0**log_d
        logger.debug(f"Separation root {distance:.6g} km after {iterations} Brent iterations")
        phi = effective_off_axis_angle(scenario.geometry, DistanceKm(distance))
        gain = fss_off_axis_gain(phi, dish)

    return SeparationSolution(
        distance_km=distance,
        binding_limit=to_dbm(limit),
        limit_kind=kind,
        main_lobe_flag=gain.main_lobe_adjacent,
        off_axis_deg=phi.value,
        gain_dbi=gain.value,
        iterations=iterations,
    )


def min_separation_distance(scenario: Scenario) -> SeparationSolution:
    """
    Minimum separation between the base station and the earth station.

    Args:
        scenario: complete scenario; the applicable limit follows its kind

    Returns:
        The coordination distance with the limit that produced it
    """
    limit, kind = separation_limit(scenario)
    solution = distance_for_limit(scenario, limit, kind)
    logger.info(
        f"Coordination distance {solution.distance_km:.6g} km at limit {solution.binding_limit} "
        f"({kind.value})"
    )
    if solution.main_lobe_flag:
        logger.warning("Interferer lies inside the main lobe; mitigation may not be effective")
    return solution


def required_attenuation(scenario: Scenario, target_distance: DistanceKm) -> AttenuationDb:
    """
    Total filter plus shielding isolation needed to meet the limit at a distance.

    Args:
        scenario: scenario whose existing isolation is ignored
        target_distance: separation the site can offer

    Returns:
        Smallest isolation R >= 0 for which the coordination distance is no
        larger than ``target_distance``; 0 dB when no isolation is needed
    """
    if target_distance.value <= 0:
        raise ValueError("target_distance must be positive")
    limit, _ = separation_limit(scenario)
    phi = effective_off_axis_angle(scenario.geometry, target_distance)
    gain = fss_off_axis_gain(phi, scenario.dish)
    needed = _rhs_without_isolation(scenario, limit, gain.value) - 20.0 * math.log10(
        target_distance.value
    )
    return AttenuationDb(max(needed, 0.0))
