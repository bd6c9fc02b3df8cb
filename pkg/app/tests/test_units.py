"""
Test suite for the unit value types
"""

import itertools
import math

import pytest
from pydantic import ValidationError

from app.utils.errors import DegenerateAggregationError, UnitMismatchError
from app.utils.units import (
    AngleDeg,
    AttenuationDb,
    DistanceKm,
    FrequencyGHz,
    GainDbi,
    PowerLevel,
    PowerReference,
    power_sum,
    to_dbm,
    to_dbw,
)


class TestReferenceConversion:
    """Test dBm / dBW conversion"""

    def test_dbw_to_dbm(self):
        """Test dbw to dbm"""
        assert to_dbm(PowerLevel.dbw(-129.57)).value == pytest.approx(-99.57)
        assert to_dbm(PowerLevel.dbw(0.0)).value == pytest.approx(30.0)

    def test_dbm_to_dbw(self):
        """Test dbm to dbw"""
        assert to_dbw(PowerLevel.dbm(-99.57)).value == pytest.approx(-129.57)

    def test_conversion_is_identity_on_same_reference(self):
        """Test conversion is identity on same reference"""
        level = PowerLevel.dbm(-68.0)
        assert to_dbm(level) == level

    def test_from_watts(self):
        """Test from watts"""
        assert PowerLevel.from_watts(1.0).value == pytest.approx(30.0)
        assert PowerLevel.from_watts(1.0, PowerReference.DBW).value == pytest.approx(0.0)
        assert PowerLevel.dbm(30.0).to_watts() == pytest.approx(1.0)

    def test_comparison_across_references(self):
        """Test comparison across references"""
        assert PowerLevel.dbw(-129.57) < PowerLevel.dbm(-68.0)
        assert PowerLevel.dbm(-60.0) >= PowerLevel.dbw(-90.0)


class TestQuantityArithmetic:
    """Test typed dB arithmetic"""

    def test_power_plus_gain_minus_loss(self):
        """Test power plus gain minus loss"""
        result = PowerLevel.dbm(72.28) - AttenuationDb(140.0) + GainDbi(7.0)
        assert result.reference == PowerReference.DBM
        assert result.value == pytest.approx(-60.72)

    def test_power_difference_is_plain_db(self):
        """Test power difference is plain db"""
        assert PowerLevel.dbm(-60.0) - PowerLevel.dbm(-68.0) == pytest.approx(8.0)

    def test_mixed_reference_difference_raises(self):
        """Test mixed reference difference raises"""
        with pytest.raises(UnitMismatchError):
            PowerLevel.dbm(-60.0) - PowerLevel.dbw(-90.0)

    def test_attenuations_add(self):
        """Test attenuations add"""
        assert (AttenuationDb(40.0) + AttenuationDb(33.0)).value == pytest.approx(73.0)

    def test_negative_attenuation_rejected(self):
        """Test negative attenuation rejected"""
        with pytest.raises(ValidationError):
            AttenuationDb(-1.0)

    def test_non_finite_rejected(self):
        """Test non finite rejected"""
        with pytest.raises(ValidationError):
            PowerLevel.dbm(float("nan"))
        with pytest.raises(ValidationError):
            DistanceKm(float("inf"))

    def test_frequency_must_be_positive(self):
        """Test frequency must be positive"""
        with pytest.raises(ValidationError):
            FrequencyGHz(0.0)

    def test_wavelength(self):
        """Test wavelength"""
        assert FrequencyGHz(3.0).wavelength_m == pytest.approx(0.0999308, rel=1e-5)

    def test_angle_wraps(self):
        """Test angle wraps"""
        assert AngleDeg(370.0).value == pytest.approx(10.0)
        assert AngleDeg(-10.0).value == pytest.approx(350.0)


class TestPowerSum:
    """Test linear-domain power aggregation"""

    def test_equal_powers_add_three_db(self):
        """Test equal powers add three db"""
        result = power_sum([PowerLevel.dbm(-72.76), PowerLevel.dbm(-72.76)])
        assert result.value == pytest.approx(-72.76 + 10 * math.log10(2), abs=1e-9)
        assert result.value == pytest.approx(-69.75, abs=0.01)

    def test_weak_term_barely_moves_total(self):
        """Test weak term barely moves total"""
        result = power_sum([PowerLevel.dbm(-72.76), PowerLevel.dbm(-99.57)])
        assert result.value == pytest.approx(-72.75, abs=0.01)

    def test_single_term_is_identity(self):
        """Test single term is identity"""
        assert power_sum([PowerLevel.dbw(-100.0)]) == PowerLevel.dbw(-100.0)

    def test_empty_raises(self):
        """Test empty raises"""
        with pytest.raises(DegenerateAggregationError):
            power_sum([])

    def test_mixed_references_raise(self):
        """Test mixed references raise"""
        with pytest.raises(UnitMismatchError):
            power_sum([PowerLevel.dbm(-70.0), PowerLevel.dbw(-100.0)])

    def test_dominates_every_term(self):
        """Test dominates every term"""
        terms = [PowerLevel.dbm(v) for v in (-80.0, -68.0, -95.5, -71.2)]
        total = power_sum(terms)
        assert all(total.value >= t.value for t in terms)

    def test_order_and_grouping_do_not_matter(self):
        """Test order and grouping do not matter"""
        terms = [PowerLevel.dbm(v) for v in (-80.0, -68.0, -95.5, -71.2)]
        reference = power_sum(terms).value
        for permutation in itertools.permutations(terms):
            assert power_sum(permutation).value == pytest.approx(reference, abs=1e-12)
        nested = power_sum([power_sum(terms[:2]), power_sum(terms[2:])])
        assert nested.value == pytest.approx(reference, abs=1e-9)

    def test_large_values_do_not_overflow(self):
        """Test large values do not overflow"""
        result = power_sum([PowerLevel.dbm(400.0), PowerLevel.dbm(400.0)])
        assert math.isfinite(result.value)
        assert result.value == pytest.approx(403.0103, abs=1e-4)
