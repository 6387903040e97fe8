from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import field_validator
from typing import Any


class Settings(BaseSettings):
    # --- Project Settings ---
    PROJECT_NAME: str = "k3lat"
    API_V1_STR: str = "/api/v1"
    API_PORT: str = "8000"
    VERSION: str = "1.0.0"
    BASE_DIR: Path = Path(__file__).resolve().parent.parent

    # --- Logging Settings ---
    LOG_LEVEL: str = "INFO"

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v: Any) -> str:
        level = str(v).strip().upper()
        if level not in ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"):
            raise ValueError(f"Unknown log level: {v}")
        return level

    # --- Reproducibility Settings ---
    K3LAT_SEED: int = 20240101

    # --- Search Limits ---
    MAX_FORM_ORDER: int = 1024
    MAX_DEFINITE_RANK: int = 12
    FACTOR_LIMIT: int = 10**6

    # --- Selftest Settings ---
    SELFTEST_SU22_SAMPLES: int = 50
    SELFTEST_KS_DELTA_MAX: int = 200
    SELFTEST_TWO_SQUARES_MAX: int = 1000
    SELFTEST_WALL_BOX: int = 3
    SELFTEST_COMPLEMENT_BOX: int = 1

    model_config = SettingsConfigDict(case_sensitive=True, env_file=".env", extra="ignore")


settings = Settings()
