"""
Coexistence engine tools for fsscoex
"""

from .assessment import AssessmentResult, assess
from .figures import FIGURES, build_figure
from .link_budget import (
    aggregate_bs_eirp,
    classify_lnb_state,
    interference_power,
    max_permissible_interference,
    satellite_signal_power,
    total_received_power,
)
from .scenario import Scenario, load_scenario, parse_scenario
from .solver import min_separation_distance, required_attenuation
from .sweep import SweepSpec, SweptParameter, run_sweep

__all__ = [
    "AssessmentResult",
    "assess",
    "FIGURES",
    "build_figure",
    "aggregate_bs_eirp",
    "classify_lnb_state",
    "interference_power",
    "max_permissible_interference",
    "satellite_signal_power",
    "total_received_power",
    "Scenario",
    "load_scenario",
    "parse_scenario",
    "min_separation_distance",
    "required_attenuation",
    "SweepSpec",
    "SweptParameter",
    "run_sweep",
]
