"""
Configuration settings for fsscoex
"""

import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Application configuration"""

    # Application settings
    APP_NAME: str = os.getenv("APP_NAME", "fsscoex")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development")

    # Output settings
    OUTPUT_DIR: str = os.getenv("FSSCOEX_OUTPUT_DIR", "out")
    CSV_SIGNIFICANT_DIGITS: int = int(os.getenv("FSSCOEX_CSV_DIGITS", "6"))

    # Sweep settings
    MAX_WORKERS: int = int(os.getenv("FSSCOEX_MAX_WORKERS", "4"))

    # 5G base station defaults
    BS_EIRP_PRESETS = {
        "RuralSuburbanUrbanMacro": 72.28,  # dBm per sector
        "UrbanSmallCellMicro": 61.53,  # dBm, outdoor small cell / microcell
    }
    BS_CARRIER_BANDWIDTH_MHZ: float = 45.0
    BS_OVERLAP_BANDWIDTH_MHZ: float = 270.0  # 3400-3670 MHz
    BS_ANTENNA_HEIGHT_M: float = 10.0

    # FSS earth station defaults
    ES_ANTENNA_HEIGHT_M: float = 10.0
    ES_ELEVATION_DEG: float = 10.0
    ES_DISH_DIAMETER_M: float = 1.8
    ES_RECEIVE_GAIN_DBI: float = 43.0
    TYPICAL_ROOFTOP_SHIELDING_DB: float = 33.0

    # LNB regions (input power, dBm) and passband
    LNB_LINEAR_LIMIT_DBM: float = -68.0
    LNB_SATURATION_LIMIT_DBM: float = -60.0
    LNB_BAND_GHZ = (3.4, 4.2)

    # Long-term protection criterion
    I_OVER_N_MAX_DB: float = -10.0
    NOISE_BANDWIDTH_HZ: float = 800e6
    NOISE_TEMPERATURE_K: float = 100.0
    TIME_PERCENTAGE: float = 20.0

    # Propagation
    INTERFERENCE_FREQUENCY_GHZ: float = 3.535
    EFFECTIVE_EARTH_RADIUS_M: float = 8.5e6
    DEFAULT_CLUTTER: str = "Suburban"

    # Satellite downlink
    SAT_EIRP_DBW: float = 40.0
    SAT_NUM_CARRIERS: int = 13
    SAT_SLANT_RANGE_KM: float = 42000.0
    SAT_DOWNLINK_FREQUENCY_GHZ: float = 3.95

    @classmethod
    def validate(cls):
        """Validate configuration"""
        if cls.MAX_WORKERS < 1:
            raise ValueError("FSSCOEX_MAX_WORKERS must be at least 1")
        if not 1 <= cls.CSV_SIGNIFICANT_DIGITS <= 17:
            raise ValueError("FSSCOEX_CSV_DIGITS must be between 1 and 17")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown LOG_LEVEL {cls.LOG_LEVEL}")
        return True


config = Config()
