"""
Test suite for the separation distance solver and single-point assessment
"""

import pytest

from app.tools.assessment import FLAG_INFEASIBLE, FLAG_MAIN_LOBE, assess
from app.tools.link_budget import LimitKind, LnbState, ScenarioKind
from app.tools.scenario import Scenario
from app.tools.solver import (
    distance_for_limit,
    min_separation_distance,
    required_attenuation,
)
from app.utils.errors import InfeasibleScenarioError
from app.utils.units import DistanceKm, PowerLevel


@pytest.fixture
def baseline():
    return Scenario()


class TestCoordinationDistance:
    """Test the published coordination distances"""

    def test_single_carrier_baseline(self, baseline):
        """Test single carrier baseline"""
        solution = min_separation_distance(baseline)
        assert solution.distance_km == pytest.approx(155.0, rel=0.05)
        assert solution.limit_kind == LimitKind.LNB_LINEAR
        assert solution.binding_limit.value == -68.0
        assert not solution.main_lobe_flag

    def test_worst_case_filled_band(self, baseline):
        """Test worst case filled band"""
        worst = baseline.with_eirp(baseline.base_station.eirp_dbm, num_carriers=6)
        assert min_separation_distance(worst).distance_km == pytest.approx(380.0, rel=0.05)

    def test_sixty_db_filter(self, baseline):
        """Test sixty db filter"""
        solution = min_separation_distance(baseline.with_filter(60.0))
        assert solution.distance_km == pytest.approx(0.150, rel=0.10)

    def test_forty_db_filter(self, baseline):
        """Test forty db filter"""
        solution = min_separation_distance(baseline.with_filter(40.0))
        assert solution.distance_km == pytest.approx(1.5, rel=0.10)

    def test_flat_segment_of_the_envelope(self, baseline):
        """Test flat segment of the envelope"""
        solution = min_separation_distance(baseline.with_elevation(48.0))
        assert solution.distance_km == pytest.approx(21.0, rel=0.10)
        assert solution.gain_dbi == -10.0

    def test_co_channel_is_limited_by_protection_criterion(self, baseline):
        """Test co channel is limited by protection criterion"""
        co = baseline.revised(kind=ScenarioKind.CO_CHANNEL)
        solution = min_separation_distance(co)
        assert solution.limit_kind == LimitKind.PROTECTION_CRITERION
        assert solution.distance_km > min_separation_distance(baseline).distance_km

    def test_counting_satellite_carriers_lengthens_distance(self, baseline):
        """Test counting satellite carriers lengthens distance"""
        with_sat = baseline.revised(include_satellite_carriers=True)
        assert (
            min_separation_distance(with_sat).distance_km
            > min_separation_distance(baseline).distance_km
        )

    def test_main_lobe_is_flagged(self, baseline):
        """Test main lobe is flagged"""
        solution = min_separation_distance(baseline.with_elevation(2.0))
        assert solution.main_lobe_flag

    def test_unpinned_geometry_converges(self, baseline):
        """Test unpinned geometry converges"""
        unpinned = baseline.revised(geometry={"pin_to_elevation": False})
        solution = min_separation_distance(unpinned)
        check = assess(unpinned, solution.distance)
        assert check.interference.value == pytest.approx(-68.0, abs=1e-6)

    @pytest.mark.parametrize("elevation", [10.0, 5.0])
    def test_unpinned_tall_base_station_lands_on_the_limit(self, baseline, elevation):
        """Test the unpinned solution meets the limit when the off-axis angle swings with distance"""
        tall = (
            baseline.with_filter(60.0)
            .with_elevation(elevation)
            .revised(
                base_station={"antenna_height_m": 300.0},
                geometry={"bs_height_m": 300.0, "pin_to_elevation": False},
            )
        )
        solution = min_separation_distance(tall)
        check = assess(tall, solution.distance)
        assert check.interference.value == pytest.approx(solution.binding_limit.value, abs=1e-6)
        assert check.interference.value == pytest.approx(-68.0, abs=1e-6)

    def test_overflowing_distance_is_infeasible(self, baseline):
        """Test overflowing distance is infeasible"""
        with pytest.raises(InfeasibleScenarioError):
            distance_for_limit(baseline, PowerLevel.dbm(-1e6))


class TestSolverProperties:
    """Test the solver against the forward evaluator"""

    @pytest.mark.parametrize("elevation", [10.0, 20.0, 30.0, 48.0, 75.0])
    @pytest.mark.parametrize("clutter", ["Suburban", "Urban", "DenseUrban"])
    def test_roundtrip(self, baseline, elevation, clutter):
        """Test roundtrip"""
        scenario = baseline.with_elevation(elevation).with_clutter(clutter)
        solution = min_separation_distance(scenario)
        result = assess(scenario, solution.distance)
        assert result.interference.value == pytest.approx(
            solution.binding_limit.value, abs=1e-6
        )

    def test_twenty_db_isolation_divides_distance_by_ten(self, baseline):
        """Test twenty db isolation divides distance by ten"""
        plain = min_separation_distance(baseline).distance_km
        isolated = min_separation_distance(baseline.with_shielding(20.0)).distance_km
        assert isolated == pytest.approx(plain / 10.0, rel=1e-9)

    def test_required_attenuation_inverts_distance(self, baseline):
        """Test required attenuation inverts distance"""
        needed = required_attenuation(baseline, DistanceKm(1.5)).value
        solution = min_separation_distance(baseline.with_filter(needed))
        assert solution.distance_km == pytest.approx(1.5, rel=1e-9)

    def test_no_attenuation_needed_far_away(self, baseline):
        """Test no attenuation needed far away"""
        assert required_attenuation(baseline, DistanceKm(500.0)).value == 0.0


class TestAssess:
    """Test the single-point evaluation"""

    def test_baseline_at_ten_km(self, baseline):
        """Test baseline at ten km"""
        result = assess(baseline, DistanceKm(10.0))
        assert result.satellite.value == pytest.approx(-72.70, abs=0.05)
        assert result.total.value >= result.interference.value
        assert result.lnb_state == LnbState.SATURATION
        assert result.min_distance_km == pytest.approx(156.2, abs=0.5)
        assert result.flags == ()

    def test_margins(self, baseline):
        """Test margins"""
        result = assess(baseline, DistanceKm(1000.0))
        assert result.lnb_state == LnbState.LINEAR
        assert result.margin_to_linear_db == pytest.approx(-68.0 - result.total.value)
        assert result.margin_to_saturation_db == pytest.approx(result.margin_to_linear_db + 8.0)
        assert result.margin_to_protection_db == pytest.approx(
            -99.57 - result.interference.value, abs=0.01
        )

    def test_at_the_coordination_distance(self, baseline):
        """Test at the coordination distance"""
        result = assess(baseline, DistanceKm(156.2))
        assert result.interference.value == pytest.approx(-68.0, abs=0.1)
        assert result.lnb_state != LnbState.SATURATION

    def test_main_lobe_flag(self, baseline):
        """Test main lobe flag"""
        result = assess(baseline.with_elevation(2.0), DistanceKm(10.0))
        assert FLAG_MAIN_LOBE in result.flags

    def test_infeasible_flag(self, baseline):
        """Test infeasible flag"""
        crowded = baseline.revised(
            include_satellite_carriers=True,
            satellite={"eirp_dbw": 60.0},
        )
        result = assess(crowded, DistanceKm(10.0))
        assert FLAG_INFEASIBLE in result.flags
        assert result.min_distance_km is None
