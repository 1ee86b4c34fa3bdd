"""
Configuration settings for the TGWA workbench
"""

from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    """Workbench settings"""

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None

    # Search limits
    DEFAULT_WINDOW: int = 64
    DEFAULT_BOUND: int = 16

    # Output
    DEFAULT_FORMAT: str = "text"

    # Ground field
    CHARACTERISTIC: int = 0

    # Built-in scenario presets
    LIBRARY_PATH: str = str(PROJECT_ROOT / "config" / "library.yaml")

    # Randomized checks of verify-paper
    RANDOM_SEED: int = 20240229

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

    @field_validator("CHARACTERISTIC")
    @classmethod
    def only_characteristic_zero(cls, v):
        if v != 0:
            raise ValueError("only characteristic 0 is supported")
        return v

    @field_validator("DEFAULT_FORMAT")
    @classmethod
    def known_format(cls, v):
        if v not in ("text", "structured"):
            raise ValueError(f"unknown output format {v!r}")
        return v

    @field_validator("DEFAULT_WINDOW", "DEFAULT_BOUND")
    @classmethod
    def positive(cls, v):
        if v < 1:
            raise ValueError("must be positive")
        return v


# Create settings instance
settings = Settings()
