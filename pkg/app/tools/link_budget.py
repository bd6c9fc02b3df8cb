"""
Power levels at the FSS receiver input and LNB state classification
"""

import logging
import math
from collections.abc import Iterable
from enum import Enum
from typing import Any, NamedTuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

from app.config import config
from app.tools.antenna import (
    DishAntenna,
    GeometryInput,
    effective_off_axis_angle,
    fss_off_axis_gain,
)
from app.tools.propagation import (
    PropagationEnvironment,
    clutter_loss,
    free_space_path_loss,
    total_path_attenuation,
)
from app.utils.errors import CoexistenceError, InfeasibleScenarioError
from app.utils.units import (
    AngleDeg,
    AttenuationDb,
    DistanceKm,
    FrequencyGHz,
    GainDbi,
    PowerLevel,
    power_sum,
    to_db,
    to_dbm,
)

logger = logging.getLogger(__name__)

_RECORD = ConfigDict(frozen=True, extra="forbid")


class DeploymentPreset(str, Enum):
    RURAL_SUBURBAN_URBAN_MACRO = "RuralSuburbanUrbanMacro"
    URBAN_SMALL_CELL_MICRO = "UrbanSmallCellMicro"
    CUSTOM = "Custom"


class ScenarioKind(str, Enum):
    CO_CHANNEL = "CoChannel"
    ADJACENT_BAND = "AdjacentBand"


class LimitKind(str, Enum):
    PROTECTION_CRITERION = "ProtectionCriterion"
    LNB_LINEAR = "LnbLinear"


class LnbState(str, Enum):
    LINEAR = "Linear"
    COMPRESSION = "Compression"
    SATURATION = "Saturation"

    @property
    def severity(self) -> int:
        return [LnbState.LINEAR, LnbState.COMPRESSION, LnbState.SATURATION].index(self)


class BaseStationConfig(BaseModel):
    """5G base station as seen from the earth station"""

    model_config = _RECORD

    deployment_preset: DeploymentPreset = DeploymentPreset.RURAL_SUBURBAN_URBAN_MACRO
    eirp_dbm: float
    carrier_bandwidth_mhz: float = Field(default=config.BS_CARRIER_BANDWIDTH_MHZ, gt=0.0)
    num_carriers: int = Field(default=1, ge=1)
    overlap_bandwidth_mhz: float = Field(default=config.BS_OVERLAP_BANDWIDTH_MHZ, gt=0.0)
    antenna_height_m: float = Field(default=config.BS_ANTENNA_HEIGHT_M, ge=0.0)
    power_backoff_db: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="before")
    @classmethod
    def _resolve_preset(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("eirp_dbm") is not None:
            preset = DeploymentPreset(data.setdefault("deployment_preset", DeploymentPreset.CUSTOM))
            expected = config.BS_EIRP_PRESETS.get(preset.value)
            if expected is not None and data["eirp_dbm"] != expected:
                raise ValueError(
                    f"eirp_dbm {data['eirp_dbm']} conflicts with preset {preset.value} ({expected} dBm)"
                )
            return data
        preset = DeploymentPreset(
            data.get("deployment_preset", DeploymentPreset.RURAL_SUBURBAN_URBAN_MACRO)
        )
        if preset == DeploymentPreset.CUSTOM:
            raise ValueError("Custom deployment preset needs eirp_dbm")
        data["deployment_preset"] = preset
        data["eirp_dbm"] = config.BS_EIRP_PRESETS[preset.value]
        return data

    @model_validator(mode="after")
    def _check_overlap(self) -> "BaseStationConfig":
        if self.overlap_bandwidth_mhz < self.carrier_bandwidth_mhz:
            raise ValueError("overlap_bandwidth_mhz must be at least one carrier_bandwidth_mhz")
        return self

    @property
    def eirp_per_carrier(self) -> PowerLevel:
        return PowerLevel.dbm(self.eirp_dbm)


class LnbModel(BaseModel):
    model_config = _RECORD

    linear_limit_dbm: float = config.LNB_LINEAR_LIMIT_DBM
    saturation_limit_dbm: float = config.LNB_SATURATION_LIMIT_DBM
    band_low_ghz: float = Field(default=config.LNB_BAND_GHZ[0], gt=0.0)
    band_high_ghz: float = Field(default=config.LNB_BAND_GHZ[1], gt=0.0)

    @model_validator(mode="after")
    def _check_order(self) -> "LnbModel":
        if not self.linear_limit_dbm < self.saturation_limit_dbm:
            raise ValueError("linear_limit_dbm must be below saturation_limit_dbm")
        if not self.band_low_ghz < self.band_high_ghz:
            raise ValueError("band_low_ghz must be below band_high_ghz")
        return self

    @property
    def linear_limit(self) -> PowerLevel:
        return PowerLevel.dbm(self.linear_limit_dbm)

    @property
    def saturation_limit(self) -> PowerLevel:
        return PowerLevel.dbm(self.saturation_limit_dbm)

    def covers(self, f: FrequencyGHz) -> bool:
        return self.band_low_ghz <= f.value <= self.band_high_ghz


class EarthStationConfig(BaseModel):
    """FSS earth station receiver and its mitigation settings"""

    model_config = _RECORD

    antenna_height_m: float = Field(default=config.ES_ANTENNA_HEIGHT_M, ge=0.0)
    elevation_deg: float = Field(default=config.ES_ELEVATION_DEG, ge=0.0, le=90.0)
    dish_diameter_m: float = Field(default=config.ES_DISH_DIAMETER_M, gt=0.0)
    receive_gain_boresight_dbi: float = config.ES_RECEIVE_GAIN_DBI
    lnb: LnbModel = Field(default_factory=LnbModel)
    filter_attenuation_db: float = Field(default=0.0, ge=0.0)
    shielding_attenuation_db: float = Field(default=0.0, ge=0.0)
    frequency_offset_factor_db: float = Field(default=0.0, ge=0.0)

    def dish_for(self, f: FrequencyGHz) -> DishAntenna:
        return DishAntenna.for_frequency(self.dish_diameter_m, f)

    @property
    def isolation(self) -> AttenuationDb:
        """R: filter and site shielding isolation combined"""
        return AttenuationDb(self.filter_attenuation_db) + AttenuationDb(
            self.shielding_attenuation_db
        )

    @property
    def frequency_offset_factor(self) -> AttenuationDb:
        return AttenuationDb(self.frequency_offset_factor_db)


class ProtectionCriteria(BaseModel):
    """Long-term I/N criterion for the FSS receiver"""

    model_config = _RECORD

    i_over_n_max_db: float = config.I_OVER_N_MAX_DB
    bandwidth_hz: float = Field(default=config.NOISE_BANDWIDTH_HZ, gt=0.0)
    noise_temperature_k: float = Field(default=config.NOISE_TEMPERATURE_K, gt=0.0)
    time_percentage: float = Field(default=config.TIME_PERCENTAGE, gt=0.0, le=100.0)


class SatelliteLinkConfig(BaseModel):
    model_config = _RECORD

    eirp_dbw: float = Field(default=config.SAT_EIRP_DBW, gt=0.0)
    num_carriers: int = Field(default=config.SAT_NUM_CARRIERS, ge=1)
    slant_range_km: float = Field(default=config.SAT_SLANT_RANGE_KM, gt=0.0)
    downlink_frequency_ghz: float = Field(default=config.SAT_DOWNLINK_FREQUENCY_GHZ, gt=0.0)
    receive_gain_dbi: float = Field(default=config.ES_RECEIVE_GAIN_DBI, gt=0.0)


class InterferenceBudget(NamedTuple):
    """Every term of the interference budget at one distance"""

    eirp: PowerLevel
    path_attenuation: AttenuationDb
    clutter: AttenuationDb
    off_axis: AngleDeg
    gain: GainDbi
    isolation: AttenuationDb
    frequency_offset: AttenuationDb
    power: PowerLevel
    main_lobe_adjacent: bool


def noise_floor(pc: ProtectionCriteria) -> PowerLevel:
    """Receiver noise power 10log10(kBT), in dBW"""
    return PowerLevel.dbw(to_db(constants.k * pc.bandwidth_hz * pc.noise_temperature_k))


def max_permissible_interference(pc: ProtectionCriteria) -> PowerLevel:
    """Noise floor plus the I/N limit, in dBm"""
    return to_dbm(noise_floor(pc).shifted(pc.i_over_n_max_db))


def aggregate_bs_eirp(bs: BaseStationConfig, overlap_bandwidth_mhz: float | None = None) -> PowerLevel:
    """
    EIRP falling inside the LNB from all carriers of a base station.

    Args:
        bs: base station configuration
        overlap_bandwidth_mhz: spectrum shared with the LNB passband; defaults
            to the station's own overlap bandwidth

    Returns:
        Per-carrier EIRP for a single carrier, otherwise the per-carrier EIRP
        scaled by the number of carriers that fit into the overlap
    """
    overlap = bs.overlap_bandwidth_mhz if overlap_bandwidth_mhz is None else overlap_bandwidth_mhz
    if overlap < bs.carrier_bandwidth_mhz:
        raise CoexistenceError(
            f"Overlap {overlap} MHz is narrower than one {bs.carrier_bandwidth_mhz} MHz carrier"
        )
    if bs.num_carriers == 1:
        return bs.eirp_per_carrier
    carriers = min(float(bs.num_carriers), overlap / bs.carrier_bandwidth_mhz)
    return bs.eirp_per_carrier.shifted(to_db(carriers))


def effective_bs_eirp(bs: BaseStationConfig) -> PowerLevel:
    """Aggregate EIRP after power back-off"""
    return aggregate_bs_eirp(bs) - AttenuationDb(bs.power_backoff_db)


def interference_budget(
    bs_eirp: PowerLevel,
    env: PropagationEnvironment,
    es: EarthStationConfig,
    geometry: GeometryInput,
    d: DistanceKm,
) -> InterferenceBudget:
    phi = effective_off_axis_angle(geometry, d)
    gain = fss_off_axis_gain(phi, es.dish_for(env.frequency))
    path = total_path_attenuation(env, d)
    power = to_dbm(bs_eirp) - path + gain - es.isolation - es.frequency_offset_factor
    return InterferenceBudget(
        eirp=to_dbm(bs_eirp),
        path_attenuation=path,
        clutter=clutter_loss(env),
        off_axis=phi,
        gain=GainDbi(gain.value),
        isolation=es.isolation,
        frequency_offset=es.frequency_offset_factor,
        power=power,
        main_lobe_adjacent=gain.main_lobe_adjacent,
    )


def interference_power(
    bs_eirp: PowerLevel,
    env: PropagationEnvironment,
    es: EarthStationConfig,
    geometry: GeometryInput,
    d: DistanceKm,
) -> PowerLevel:
    """
    5G power at the earth station input: EIRP - L(d) + G(phi) - R - F.

    Returns:
        Interference power in dBm
    """
    return interference_budget(bs_eirp, env, es, geometry, d).power


def aggregate_interference(
    bs_eirp: PowerLevel,
    env: PropagationEnvironment,
    es: EarthStationConfig,
    geometry: GeometryInput,
    distances: Iterable[DistanceKm],
) -> PowerLevel:
    """Power sum of identical stations placed at the given distances"""
    return power_sum(interference_power(bs_eirp, env, es, geometry, d) for d in distances)


def satellite_signal_power(sat: SatelliteLinkConfig) -> PowerLevel:
    """Wanted carriers at the earth station input, in dBm"""
    loss = free_space_path_loss(FrequencyGHz(sat.downlink_frequency_ghz), DistanceKm(sat.slant_range_km))
    received = (
        PowerLevel.dbw(sat.eirp_dbw).shifted(to_db(sat.num_carriers))
        - loss
        + GainDbi(sat.receive_gain_dbi)
    )
    return to_dbm(received)


def total_received_power(i5g: PowerLevel, csat: PowerLevel) -> PowerLevel:
    return power_sum([i5g, csat])


def classify_lnb_state(total: PowerLevel, lnb: LnbModel) -> LnbState:
    if total < lnb.linear_limit:
        return LnbState.LINEAR
    if total < lnb.saturation_limit:
        return LnbState.COMPRESSION
    return LnbState.SATURATION


def binding_limit(
    scenario: ScenarioKind, pc: ProtectionCriteria, lnb: LnbModel
) -> tuple[PowerLevel, LimitKind]:
    """The applicable interference limit and which criterion it comes from"""
    if scenario == ScenarioKind.CO_CHANNEL:
        protection = max_permissible_interference(pc)
        if protection <= lnb.linear_limit:
            return protection, LimitKind.PROTECTION_CRITERION
    return lnb.linear_limit, LimitKind.LNB_LINEAR


def applicable_limit(scenario: ScenarioKind, pc: ProtectionCriteria, lnb: LnbModel) -> PowerLevel:
    return binding_limit(scenario, pc, lnb)[0]


def limit_with_satellite(limit: PowerLevel, csat: PowerLevel) -> PowerLevel:
    """
    Interference level that brings the total LNB input up to ``limit``.

    Raises InfeasibleScenarioError when the satellite carriers alone already
    reach the limit.
    """
    limit, csat = to_dbm(limit), to_dbm(csat)
    headroom = 10.0 ** (limit.value / 10.0) - 10.0 ** (csat.value / 10.0)
    if headroom <= 0:
        raise InfeasibleScenarioError(
            f"Satellite carriers {csat} already reach the {limit} limit; no interference headroom"
        )
    return PowerLevel.dbm(10.0 * math.log10(headroom))
