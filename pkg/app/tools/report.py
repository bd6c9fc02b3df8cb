"""
Report rows and CSV / JSON emission
"""

import json
import logging
import math
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator

from app.config import config
from app.tools.assessment import AssessmentResult

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "swept_value",
    "i5g_dbm",
    "csat_dbm",
    "itot_dbm",
    "lnb_state",
    "margin_to_linear_db",
    "min_distance_km",
    "flags",
]


class ReportRow(BaseModel):
    """One line of an assessment or sweep report"""

    model_config = ConfigDict(frozen=True)

    swept_value: float | str
    i5g_dbm: float
    csat_dbm: float
    itot_dbm: float
    lnb_state: str
    margin_to_linear_db: float
    min_distance_km: float | None
    flags: str = ""

    @field_validator("i5g_dbm", "csat_dbm", "itot_dbm", "margin_to_linear_db", "min_distance_km")
    @classmethod
    def _finite(cls, v: float | None) -> float | None:
        if v is not None and not math.isfinite(v):
            raise ValueError("report values must be finite")
        return v

    @classmethod
    def from_assessment(cls, swept_value: float | str, result: AssessmentResult) -> "ReportRow":
        return cls(
            swept_value=swept_value,
            i5g_dbm=result.interference.value,
            csat_dbm=result.satellite.value,
            itot_dbm=result.total.value,
            lnb_state=result.lnb_state.value,
            margin_to_linear_db=result.margin_to_linear_db,
            min_distance_km=result.min_distance_km,
            flags=";".join(result.flags),
        )


def rows_to_frame(rows: list[ReportRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=REPORT_COLUMNS)


def significant(value: Any, digits: int | None = None) -> Any:
    """Round floats to the configured number of significant digits"""
    if isinstance(value, float) and math.isfinite(value):
        digits = digits or config.CSV_SIGNIFICANT_DIGITS
        return float(f"{value:.{digits}g}")
    return value


def output_path(filename: str, out: str | Path | None = None) -> Path:
    """Explicit path if given, otherwise ``filename`` inside the output directory"""
    if out is not None:
        return Path(out)
    return Path(config.OUTPUT_DIR) / filename


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    """
    Write a table with a header row, fixed column order and
    significant-digit formatting, independent of locale.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        index=False,
        float_format=f"%.{config.CSV_SIGNIFICANT_DIGITS}g",
        lineterminator="\n",
    )
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_json(records: list[dict[str, Any]], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rounded = [{key: significant(value) for key, value in record.items()} for record in records]
    path.write_text(json.dumps(rounded, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(records)} records to {path}")
    return path


def frame_records(frame: pd.DataFrame) -> list[dict[str, Any]]:
    """Plain-Python records of a table, NaN becoming None"""
    cleaned = frame.astype(object).where(frame.notna(), None)
    return cleaned.to_dict(orient="records")


def format_row(row: ReportRow) -> str:
    distance = f"{row.min_distance_km:.6g} km" if row.min_distance_km is not None else "none"
    lines = [
        f"Swept value:         {row.swept_value}",
        f"5G interference:     {row.i5g_dbm:.2f} dBm",
        f"Satellite carriers:  {row.csat_dbm:.2f} dBm",
        f"Total at LNB:        {row.itot_dbm:.2f} dBm",
        f"LNB state:           {row.lnb_state}",
        f"Margin to linear:    {row.margin_to_linear_db:.2f} dB",
        f"Min separation:      {distance}",
    ]
    if row.flags:
        lines.append(f"Flags:               {row.flags}")
    return "\n".join(lines)
