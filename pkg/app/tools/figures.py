"""
Figure presets: the sweeps behind each published coexistence figure

Every column is produced by an engine operation (run_sweep, the solver or the
gain envelope); nothing here does link-budget arithmetic of its own.
"""

import logging
import math
from collections.abc import Callable
from typing import NamedTuple

import numpy as np
import pandas as pd

from app.config import config
from app.tools.antenna import fss_off_axis_gain, phi_min
from app.tools.link_budget import LimitKind
from app.tools.propagation import ClutterName
from app.tools.scenario import Scenario
from app.tools.solver import distance_for_limit
from app.tools.sweep import SweepSpec, SweptParameter, run_sweep
from app.utils.errors import UnknownFigureError
from app.utils.units import AngleDeg

logger = logging.getLogger(__name__)

DISTANCE_GRID_KM = np.geomspace(1.0, 1000.0, 121).tolist()
OFF_AXIS_SERIES_DEG = [10.0, 20.0, 30.0, 40.0, 48.0, 60.0, 90.0]
EIRP_GRID_DBM = np.arange(40.0, 82.5, 1.0).tolist()
EIRP_SERIES_OFF_AXIS_DEG = [10.0, 20.0, 30.0, 48.0]
CLUTTER_SERIES = [ClutterName.SUBURBAN, ClutterName.URBAN, ClutterName.DENSE_URBAN]
FILTER_GRID_DB = np.arange(0.0, 61.0, 2.0).tolist()
FILTER_ENLARGED_GRID_DB = np.arange(40.0, 60.5, 0.5).tolist()
OFF_AXIS_GRID_DEG = np.arange(10.0, 91.0, 1.0).tolist()
WORST_CASE_CARRIERS = 6  # 270 MHz of 45 MHz carriers


class FigureTable(NamedTuple):
    name: str
    table: pd.DataFrame
    crossings: pd.DataFrame | None = None


def _label(value: float) -> str:
    return f"{value:g}"


def _series(spec: SweepSpec, column: str) -> list:
    return run_sweep(spec)[column].tolist()


def _crossings(series: dict[str, Scenario]) -> pd.DataFrame:
    """Saturation and linear-limit crossing distances for each series"""
    rows = []
    for label, scenario in series.items():
        lnb = scenario.lnb
        for threshold_name, limit in (
            ("saturation", lnb.saturation_limit),
            ("linear", lnb.linear_limit),
        ):
            solution = distance_for_limit(scenario, limit, LimitKind.LNB_LINEAR)
            rows.append(
                {
                    "series": label,
                    "threshold": threshold_name,
                    "threshold_dbm": limit.value,
                    "distance_km": solution.distance_km,
                }
            )
    return pd.DataFrame(rows, columns=["series", "threshold", "threshold_dbm", "distance_km"])


def _distance_sweep(name: str, series: dict[str, Scenario]) -> FigureTable:
    table = pd.DataFrame({"distance_km": DISTANCE_GRID_KM})
    for label, scenario in series.items():
        spec = SweepSpec(
            swept_parameter=SweptParameter.DISTANCE,
            values=tuple(DISTANCE_GRID_KM),
            fixed_scenario=scenario,
        )
        table[f"i5g_dbm_{label}"] = _series(spec, "i5g_dbm")
    return FigureTable(name, table, _crossings(series))


def figure_3(base: Scenario) -> FigureTable:
    """Interference power versus distance for several off-axis angles"""
    series = {f"phi{_label(a)}": base.with_off_axis(a) for a in OFF_AXIS_SERIES_DEG}
    return _distance_sweep("figure3", series)


def figure_4(base: Scenario) -> FigureTable:
    """Coordination distance versus in-band EIRP for several off-axis angles"""
    table = pd.DataFrame({"eirp_dbm": EIRP_GRID_DBM})
    for angle in EIRP_SERIES_OFF_AXIS_DEG:
        spec = SweepSpec(
            swept_parameter=SweptParameter.EIRP,
            values=tuple(EIRP_GRID_DBM),
            fixed_scenario=base.with_off_axis(angle),
        )
        table[f"distance_km_phi{_label(angle)}"] = _series(spec, "min_distance_km")
    return FigureTable("figure4", table)


def figure_5(base: Scenario) -> FigureTable:
    """Interference versus distance: one carrier against the filled 270 MHz band"""
    eirp = base.base_station.eirp_dbm
    series = {
        "single_carrier": base.with_eirp(eirp, num_carriers=1),
        "worst_case": base.with_eirp(eirp, num_carriers=WORST_CASE_CARRIERS),
    }
    return _distance_sweep("figure5", series)


def _filter_figure(name: str, base: Scenario, grid: list[float]) -> FigureTable:
    table = pd.DataFrame({"filter_db": grid})
    series = {clutter.value.lower(): base.with_clutter(clutter) for clutter in CLUTTER_SERIES}
    series["suburban_shielded"] = base.with_clutter(ClutterName.SUBURBAN).with_shielding(
        config.TYPICAL_ROOFTOP_SHIELDING_DB
    )
    for label, scenario in series.items():
        spec = SweepSpec(
            swept_parameter=SweptParameter.FILTER_ATTENUATION,
            values=tuple(grid),
            fixed_scenario=scenario,
        )
        table[f"distance_km_{label}"] = _series(spec, "min_distance_km")
    return FigureTable(name, table)


def figure_6(base: Scenario) -> FigureTable:
    """Coordination distance versus filter attenuation"""
    return _filter_figure("figure6", base, FILTER_GRID_DB)


def figure_7(base: Scenario) -> FigureTable:
    """Coordination distance versus filter attenuation, 40-60 dB enlarged"""
    return _filter_figure("figure7", base, FILTER_ENLARGED_GRID_DB)


def figure_8(base: Scenario) -> FigureTable:
    """Earth station gain envelope versus off-axis angle"""
    dish = base.dish
    angles = np.arange(math.ceil(phi_min(dish).value), 181.0, 1.0).tolist()
    gains = [fss_off_axis_gain(AngleDeg(a), dish).value for a in angles]
    return FigureTable("figure8", pd.DataFrame({"off_axis_deg": angles, "gain_dbi": gains}))


def figure_9(base: Scenario) -> FigureTable:
    """Coordination distance versus off-axis angle for three clutter categories"""
    table = pd.DataFrame({"off_axis_deg": OFF_AXIS_GRID_DEG})
    for clutter in CLUTTER_SERIES:
        spec = SweepSpec(
            swept_parameter=SweptParameter.OFF_AXIS_ANGLE,
            values=tuple(OFF_AXIS_GRID_DEG),
            fixed_scenario=base.with_clutter(clutter),
        )
        table[f"distance_km_{clutter.value.lower()}"] = _series(spec, "min_distance_km")
    return FigureTable("figure9", table)


FIGURES: dict[int, Callable[[Scenario], FigureTable]] = {
    3: figure_3,
    4: figure_4,
    5: figure_5,
    6: figure_6,
    7: figure_7,
    8: figure_8,
    9: figure_9,
}


def build_figure(figure_id: int, base: Scenario | None = None) -> FigureTable:
    """Tabulate one figure around ``base`` (the study defaults when omitted)"""
    if figure_id not in FIGURES:
        raise UnknownFigureError(
            f"Unknown figure {figure_id}; choose one of {sorted(FIGURES)}"
        )
    logger.info(f"Building figure {figure_id}")
    return FIGURES[figure_id](base or Scenario())
