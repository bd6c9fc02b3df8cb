"""
Test suite for the receiver-input link budget
"""

import math

import pytest
from pydantic import ValidationError

from app.tools.antenna import GeometryInput
from app.tools.link_budget import (
    BaseStationConfig,
    DeploymentPreset,
    EarthStationConfig,
    LimitKind,
    LnbModel,
    LnbState,
    ProtectionCriteria,
    SatelliteLinkConfig,
    ScenarioKind,
    aggregate_bs_eirp,
    aggregate_interference,
    applicable_limit,
    binding_limit,
    classify_lnb_state,
    effective_bs_eirp,
    interference_power,
    limit_with_satellite,
    max_permissible_interference,
    noise_floor,
    satellite_signal_power,
    total_received_power,
)
from app.tools.propagation import PropagationEnvironment
from app.utils.errors import CoexistenceError, InfeasibleScenarioError
from app.utils.units import DistanceKm, PowerLevel, PowerReference


@pytest.fixture
def env():
    return PropagationEnvironment()


@pytest.fixture
def geometry():
    return GeometryInput()


def i5g(d_km, es=None, eirp=72.28, env=None, geometry=None):
    return interference_power(
        PowerLevel.dbm(eirp),
        env or PropagationEnvironment(),
        es or EarthStationConfig(),
        geometry or GeometryInput(),
        DistanceKm(d_km),
    ).value


class TestProtectionCriterion:
    """Test the noise floor and permissible interference"""

    def test_noise_floor(self):
        """Test noise floor"""
        floor = noise_floor(ProtectionCriteria())
        assert floor.reference == PowerReference.DBW
        assert floor.value == pytest.approx(-119.57, abs=0.01)

    def test_max_permissible_interference(self):
        """Test max permissible interference"""
        limit = max_permissible_interference(ProtectionCriteria())
        assert limit.reference == PowerReference.DBM
        assert limit.value == pytest.approx(-99.57, abs=0.01)


class TestBaseStationEirp:
    """Test presets and carrier aggregation"""

    def test_presets(self):
        """Test presets"""
        assert BaseStationConfig().eirp_dbm == 72.28
        small = BaseStationConfig(deployment_preset="UrbanSmallCellMicro")
        assert small.eirp_dbm == 61.53

    def test_custom_needs_eirp(self):
        """Test custom needs eirp"""
        with pytest.raises(ValidationError):
            BaseStationConfig(deployment_preset="Custom")
        assert BaseStationConfig(eirp_dbm=50.0).deployment_preset == DeploymentPreset.CUSTOM

    def test_eirp_conflicting_with_preset(self):
        """Test eirp conflicting with preset"""
        with pytest.raises(ValidationError):
            BaseStationConfig(deployment_preset="RuralSuburbanUrbanMacro", eirp_dbm=60.0)

    def test_single_carrier(self):
        """Test single carrier"""
        assert aggregate_bs_eirp(BaseStationConfig()).value == pytest.approx(72.28)

    def test_filled_band_worst_case(self):
        """Test filled band worst case"""
        bs = BaseStationConfig(num_carriers=6)
        assert aggregate_bs_eirp(bs, 270.0).value == pytest.approx(80.06, abs=0.01)

    def test_two_carrier_overlap(self):
        """Test two carrier overlap"""
        bs = BaseStationConfig(num_carriers=6)
        assert aggregate_bs_eirp(bs, 90.0).value == pytest.approx(75.29, abs=0.01)

    def test_overlap_narrower_than_one_carrier(self):
        """Test overlap narrower than one carrier"""
        with pytest.raises(CoexistenceError):
            aggregate_bs_eirp(BaseStationConfig(num_carriers=2), 30.0)

    def test_backoff(self):
        """Test backoff"""
        bs = BaseStationConfig(power_backoff_db=3.0)
        assert effective_bs_eirp(bs).value == pytest.approx(69.28)


class TestInterferencePower:
    """Test the interference budget"""

    def test_baseline_reaches_linear_limit(self):
        """Test baseline reaches linear limit"""
        assert i5g(156.2) == pytest.approx(-68.0, abs=0.1)

    def test_sixty_db_filter_moves_limit_to_150_m(self):
        """Test sixty db filter moves limit to 150 m"""
        es = EarthStationConfig(filter_attenuation_db=60.0)
        assert i5g(0.1562, es=es) == pytest.approx(-68.0, abs=0.1)

    def test_doubling_distance(self):
        """Test doubling distance"""
        assert i5g(20.0) - i5g(10.0) == pytest.approx(-20 * math.log10(2), abs=1e-9)

    def test_isolation_and_offset_subtract(self):
        """Test isolation and offset subtract"""
        es = EarthStationConfig(
            filter_attenuation_db=10.0, shielding_attenuation_db=5.0, frequency_offset_factor_db=2.0
        )
        assert i5g(10.0) - i5g(10.0, es=es) == pytest.approx(17.0)

    @pytest.mark.parametrize("d", [1.0, 10.0, 100.0])
    def test_monotone_in_eirp_and_isolation(self, d):
        """Test monotone in eirp and isolation"""
        assert i5g(d, eirp=73.28) > i5g(d)
        assert i5g(d, es=EarthStationConfig(filter_attenuation_db=1.0)) < i5g(d)

    def test_monotone_in_distance(self):
        """Test monotone in distance"""
        levels = [i5g(d) for d in (0.5, 1.0, 5.0, 50.0, 500.0)]
        assert all(a > b for a, b in zip(levels, levels[1:]))

    def test_accepts_dbw_eirp(self, env, geometry):
        """Test accepts dbw eirp"""
        in_dbw = interference_power(
            PowerLevel.dbw(42.28), env, EarthStationConfig(), geometry, DistanceKm(10.0)
        )
        assert in_dbw.reference == PowerReference.DBM
        assert in_dbw.value == pytest.approx(i5g(10.0))

    def test_aggregate_of_two_equal_stations(self, env, geometry):
        """Test aggregate of two equal stations"""
        total = aggregate_interference(
            PowerLevel.dbm(72.28),
            env,
            EarthStationConfig(),
            geometry,
            [DistanceKm(10.0), DistanceKm(10.0)],
        )
        assert total.value == pytest.approx(i5g(10.0) + 10 * math.log10(2))


class TestSatelliteSignal:
    """Test the wanted carrier budget"""

    def test_defaults(self):
        """Test defaults"""
        csat = satellite_signal_power(SatelliteLinkConfig())
        assert csat.reference == PowerReference.DBM
        assert csat.value == pytest.approx(-72.76, abs=0.1)

    def test_single_carrier(self):
        """Test single carrier"""
        assert satellite_signal_power(SatelliteLinkConfig(num_carriers=1)).value == pytest.approx(
            -83.84, abs=0.1
        )

    def test_receive_gain_is_additive(self):
        """Test receive gain is additive"""
        base = satellite_signal_power(SatelliteLinkConfig()).value
        boosted = satellite_signal_power(SatelliteLinkConfig(receive_gain_dbi=46.0)).value
        assert boosted - base == pytest.approx(3.0)

    def test_satellite_alone_is_linear(self):
        """Test satellite alone is linear"""
        csat = satellite_signal_power(SatelliteLinkConfig())
        assert classify_lnb_state(csat, LnbModel()) == LnbState.LINEAR


class TestLnbState:
    """Test LNB region classification"""

    @pytest.mark.parametrize(
        "level,state",
        [
            (-70.0, LnbState.LINEAR),
            (-65.0, LnbState.COMPRESSION),
            (-55.0, LnbState.SATURATION),
            (-68.0, LnbState.COMPRESSION),
            (-60.0, LnbState.SATURATION),
        ],
    )
    def test_default_thresholds(self, level, state):
        """Test default thresholds"""
        assert classify_lnb_state(PowerLevel.dbm(level), LnbModel()) == state

    def test_state_never_improves_as_power_rises(self):
        """Test state never improves as power rises"""
        lnb = LnbModel()
        states = [classify_lnb_state(PowerLevel.dbm(v / 10), lnb) for v in range(-800, -400)]
        severities = [s.severity for s in states]
        assert severities == sorted(severities)

    def test_total_at_least_each_term(self):
        """Test total at least each term"""
        total = total_received_power(PowerLevel.dbm(-68.0), PowerLevel.dbm(-72.7))
        assert total.value >= -68.0
        assert classify_lnb_state(total, LnbModel()) == LnbState.COMPRESSION

    def test_limits_must_be_ordered(self):
        """Test limits must be ordered"""
        with pytest.raises(ValidationError):
            LnbModel(linear_limit_dbm=-60.0, saturation_limit_dbm=-68.0)


class TestApplicableLimit:
    """Test which criterion binds"""

    def test_adjacent_band_uses_lnb(self):
        """Test adjacent band uses lnb"""
        limit, kind = binding_limit(ScenarioKind.ADJACENT_BAND, ProtectionCriteria(), LnbModel())
        assert limit.value == -68.0 and kind == LimitKind.LNB_LINEAR

    def test_co_channel_uses_protection(self):
        """Test co channel uses protection"""
        limit = applicable_limit(ScenarioKind.CO_CHANNEL, ProtectionCriteria(), LnbModel())
        assert limit.value == pytest.approx(-99.57, abs=0.01)

    def test_co_channel_falls_back_to_a_stricter_lnb_limit(self):
        """Test co channel falls back to a stricter lnb limit"""
        lnb = LnbModel(linear_limit_dbm=-110.0, saturation_limit_dbm=-60.0)
        _, kind = binding_limit(ScenarioKind.CO_CHANNEL, ProtectionCriteria(), lnb)
        assert applicable_limit(ScenarioKind.CO_CHANNEL, ProtectionCriteria(), lnb).value == -110.0
        assert kind == LimitKind.LNB_LINEAR

    def test_limit_with_satellite(self):
        """Test limit with satellite"""
        limit = limit_with_satellite(PowerLevel.dbm(-68.0), PowerLevel.dbm(-72.7))
        assert limit.value < -68.0
        assert total_received_power(limit, PowerLevel.dbm(-72.7)).value == pytest.approx(-68.0)

    def test_no_headroom(self):
        """Test no headroom"""
        with pytest.raises(InfeasibleScenarioError):
            limit_with_satellite(PowerLevel.dbm(-68.0), PowerLevel.dbm(-60.0))
