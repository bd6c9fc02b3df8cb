"""
Scenario records and scenario file loading
"""

import difflib
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.tools.antenna import DishAntenna, GeometryInput
from app.tools.link_budget import (
    BaseStationConfig,
    DeploymentPreset,
    EarthStationConfig,
    LnbModel,
    ProtectionCriteria,
    SatelliteLinkConfig,
    ScenarioKind,
    effective_bs_eirp,
)
from app.tools.propagation import ClutterCategory, PropagationEnvironment
from app.utils.errors import CoexistenceError, ScenarioValidationError
from app.utils.units import FrequencyGHz, PowerLevel

logger = logging.getLogger(__name__)


def _value(section: Any, name: str, default: Any = None) -> Any:
    if isinstance(section, BaseModel):
        return getattr(section, name)
    if isinstance(section, dict):
        return section.get(name, default)
    return default


def _merge(base: dict[str, Any], changes: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in changes.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Scenario(BaseModel):
    """One complete coexistence scenario

    Heights and elevation live on the station records; the geometry and the
    propagation environment inherit them when they are not given, and must
    agree with them when they are.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ScenarioKind = ScenarioKind.ADJACENT_BAND
    base_station: BaseStationConfig = Field(default_factory=BaseStationConfig)
    earth_station: EarthStationConfig = Field(default_factory=EarthStationConfig)
    environment: PropagationEnvironment = Field(default_factory=PropagationEnvironment)
    satellite: SatelliteLinkConfig = Field(default_factory=SatelliteLinkConfig)
    protection: ProtectionCriteria = Field(default_factory=ProtectionCriteria)
    geometry: GeometryInput = Field(default_factory=GeometryInput)
    include_satellite_carriers: bool = False

    @model_validator(mode="before")
    @classmethod
    def _inherit_station_values(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        es = data.get("earth_station")
        bs = data.get("base_station")
        es_height = _value(es, "antenna_height_m")
        elevation = _value(es, "elevation_deg")
        bs_height = _value(bs, "antenna_height_m")
        boresight_gain = _value(es, "receive_gain_boresight_dbi")

        def inherit(section: str, defaults: dict[str, Any]) -> None:
            current = data.get(section, {})
            if current is None:
                current = {}
            if not isinstance(current, dict):
                return
            current = dict(current)
            for key, value in defaults.items():
                if value is not None:
                    current.setdefault(key, value)
            data[section] = current

        inherit("environment", {"antenna_height_m": es_height})
        inherit(
            "geometry",
            {"elevation_deg": elevation, "es_height_m": es_height, "bs_height_m": bs_height},
        )
        inherit("satellite", {"receive_gain_dbi": boresight_gain})
        return data

    @model_validator(mode="after")
    def _check_consistency(self) -> "Scenario":
        es, bs, g = self.earth_station, self.base_station, self.geometry
        pairs = [
            ("geometry.elevation_deg", g.elevation_deg, "earth_station.elevation_deg", es.elevation_deg),
            ("geometry.es_height_m", g.es_height_m, "earth_station.antenna_height_m", es.antenna_height_m),
            ("geometry.bs_height_m", g.bs_height_m, "base_station.antenna_height_m", bs.antenna_height_m),
            (
                "environment.antenna_height_m",
                self.environment.antenna_height_m,
                "earth_station.antenna_height_m",
                es.antenna_height_m,
            ),
        ]
        for name, value, source, expected in pairs:
            if value != expected:
                raise ValueError(f"{name}={value} disagrees with {source}={expected}")
        if not es.lnb.covers(self.frequency):
            logger.warning(
                f"Interference frequency {self.frequency.value} GHz lies outside the LNB band "
                f"{es.lnb.band_low_ghz}-{es.lnb.band_high_ghz} GHz"
            )
        return self

    @property
    def frequency(self) -> FrequencyGHz:
        return self.environment.frequency

    @property
    def bs_eirp(self) -> PowerLevel:
        return effective_bs_eirp(self.base_station)

    @property
    def dish(self) -> DishAntenna:
        return self.earth_station.dish_for(self.frequency)

    @property
    def lnb(self) -> LnbModel:
        return self.earth_station.lnb

    def revised(self, **changes: Any) -> "Scenario":
        """A validated copy with nested section changes merged in"""
        return Scenario.model_validate(_merge(self.model_dump(), changes))

    def with_eirp(self, eirp_dbm: float, num_carriers: int = 1) -> "Scenario":
        return self.revised(
            base_station={
                "deployment_preset": DeploymentPreset.CUSTOM,
                "eirp_dbm": eirp_dbm,
                "num_carriers": num_carriers,
            }
        )

    def with_elevation(self, elevation_deg: float) -> "Scenario":
        return self.revised(
            earth_station={"elevation_deg": elevation_deg},
            geometry={"elevation_deg": elevation_deg},
        )

    def with_off_axis(self, off_axis_deg: float) -> "Scenario":
        """
        Re-point the dish so the pinned off-axis angle equals ``off_axis_deg``.

        Angles up to 90 degrees become the elevation with the dish facing the
        base station; larger ones tilt the dish back over the zenith, i.e.
        elevation 180 - phi with the azimuth turned away by 180 degrees.

        Raises:
            CoexistenceError: the geometry is not pinned or the angle is outside [0, 180]
        """
        if not self.geometry.pin_to_elevation:
            raise CoexistenceError(
                "an off-axis angle can only be set directly with pin_to_elevation; "
                "otherwise it depends on distance and heights"
            )
        if not 0.0 <= off_axis_deg <= 180.0:
            raise CoexistenceError(f"Off-axis angle must lie in [0, 180], got {off_axis_deg}")
        if off_axis_deg <= 90.0:
            elevation, azimuth = off_axis_deg, 0.0
        else:
            elevation, azimuth = 180.0 - off_axis_deg, 180.0
        return self.revised(
            earth_station={"elevation_deg": elevation},
            geometry={"elevation_deg": elevation, "azimuth_offset_deg": azimuth},
        )

    def with_es_height(self, height_m: float) -> "Scenario":
        return self.revised(
            earth_station={"antenna_height_m": height_m},
            environment={"antenna_height_m": height_m},
            geometry={"es_height_m": height_m},
        )

    def with_clutter(self, clutter: ClutterCategory | str) -> "Scenario":
        category = clutter if isinstance(clutter, ClutterCategory) else ClutterCategory.of(clutter)
        return self.revised(environment={"clutter": category.model_dump()})

    def with_filter(self, filter_db: float) -> "Scenario":
        return self.revised(earth_station={"filter_attenuation_db": filter_db})

    def with_shielding(self, shielding_db: float) -> "Scenario":
        return self.revised(earth_station={"shielding_attenuation_db": shielding_db})


ScenarioFile = Scenario


def _key_lines(node: yaml.Node | None, path: tuple = ()) -> dict[tuple, int]:
    """Map every mapping key path in a composed YAML document to its line"""
    lines: dict[tuple, int] = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key_path = path + (key_node.value,)
            lines[key_path] = key_node.start_mark.line + 1
            lines.update(_key_lines(value_node, key_path))
    return lines


def _fields_at(loc: tuple) -> list[str]:
    model: type[BaseModel] = Scenario
    for part in loc:
        field = model.model_fields.get(str(part))
        if field is None or not isinstance(field.annotation, type):
            return []
        if not issubclass(field.annotation, BaseModel):
            return []
        model = field.annotation
    return list(model.model_fields)


def nearest_key(unknown: str, candidates: list[str]) -> str | None:
    """Closest valid key, also comparing against keys without their unit suffix"""
    best, best_score = None, 0.0
    for candidate in candidates:
        stem = candidate.rsplit("_", 1)[0] if "_" in candidate else candidate
        score = max(
            difflib.SequenceMatcher(None, unknown, candidate).ratio(),
            difflib.SequenceMatcher(None, unknown, stem).ratio(),
        )
        if score > best_score:
            best, best_score = candidate, score
    return best if best_score >= 0.6 else None


def _describe(error: dict[str, Any], lines: dict[tuple, int]) -> str:
    loc = tuple(error["loc"])
    path = ".".join(str(part) for part in loc) or "<root>"
    line = None
    for depth in range(len(loc), 0, -1):
        line = lines.get(loc[:depth])
        if line is not None:
            break
    where = f"line {line}, " if line is not None else ""
    if error["type"] == "extra_forbidden":
        suggestion = nearest_key(str(loc[-1]), _fields_at(loc[:-1]))
        hint = f"; did you mean '{suggestion}'?" if suggestion else ""
        return f"{where}{path}: unknown key{hint}"
    return f"{where}{path}: {error['msg']}"


def parse_scenario(text: str, source: str | None = None) -> Scenario:
    """Validate scenario YAML text; omitted fields take the study defaults"""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        raise ScenarioValidationError([f"{where}parse error: {getattr(e, 'problem', e)}"], source)

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ScenarioValidationError(["top level must be a mapping of sections"], source)

    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        lines = _key_lines(node)
        raise ScenarioValidationError([_describe(err, lines) for err in e.errors()], source)


def load_scenario(path: str | Path) -> Scenario:
    """
    Load and validate a scenario file.

    Args:
        path: YAML file with any of the sections base_station, earth_station,
            environment, satellite, protection, geometry, kind

    Returns:
        Fully validated scenario
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioValidationError([f"cannot read file: {e}"], str(path))
    scenario = parse_scenario(text, str(path))
    logger.info(f"Loaded scenario from {path}")
    return scenario
