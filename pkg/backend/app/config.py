"""
Configuration settings for CubeLab.

This module provides configuration management using environment variables
and sensible defaults for the CubeLab toolkit.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def _parse_rational(v: str) -> Fraction:
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"'{v}' is not a rational number") from exc


class Settings(BaseSettings):
    """Toolkit settings."""

    # Model configuration
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"  # Allow extra fields without raising an error
    )

    # General settings
    app_name: str = Field(default="CubeLab", json_schema_extra={"env": "APP_NAME"})
    debug: bool = Field(default=False, json_schema_extra={"env": "DEBUG"})
    version: str = Field(default="1.0.0", json_schema_extra={"env": "VERSION"})
    log_level: str = Field(default="INFO", json_schema_extra={"env": "LOG_LEVEL"})

    # Enumeration settings
    enumeration_limit: int = Field(default=8, ge=1, json_schema_extra={"env": "ENUMERATION_LIMIT"})

    # Campaign dimension caps: default, with --extended, and absolute
    default_max_dim: int = Field(default=3, ge=1, json_schema_extra={"env": "DEFAULT_MAX_DIM"})
    extended_max_dim: int = Field(default=5, ge=1, json_schema_extra={"env": "EXTENDED_MAX_DIM"})
    hard_max_dim: int = Field(default=8, ge=1, json_schema_extra={"env": "HARD_MAX_DIM"})

    # Covering settings
    # r-hat is the largest rational with denominator 2**bits below 1 + 2/(sqrt(n)-1)
    ratio_denominator_bits: int = Field(default=16, ge=1, json_schema_extra={"env": "RATIO_DENOMINATOR_BITS"})
    scale_factor: str = Field(default="2", json_schema_extra={"env": "SCALE_FACTOR"})

    # Search settings
    search_delta_cap: str = Field(default="1/2", json_schema_extra={"env": "SEARCH_DELTA_CAP"})

    # Campaign settings
    default_seed: int = Field(default=0, json_schema_extra={"env": "DEFAULT_SEED"})
    default_samples: int = Field(default=10000, ge=0, json_schema_extra={"env": "DEFAULT_SAMPLES"})
    campaign_workers: int = Field(default=1, ge=1, json_schema_extra={"env": "CAMPAIGN_WORKERS"})

    @field_validator("scale_factor")
    @classmethod
    def validate_scale_factor(cls, v: str) -> str:
        """Dilation factor of the base oracle; a rational greater than 1."""
        if _parse_rational(v) <= 1:
            raise ValueError(f"'{v}' must be greater than 1")
        return v

    @field_validator("search_delta_cap")
    @classmethod
    def validate_delta_cap(cls, v: str) -> str:
        if _parse_rational(v) <= 0:
            raise ValueError(f"'{v}' must be positive")
        return v

    @property
    def scale_factor_value(self) -> Fraction:
        return Fraction(self.scale_factor)

    @property
    def search_delta_cap_value(self) -> Fraction:
        return Fraction(self.search_delta_cap)


# Global settings instance
_settings: Optional[Settings] = None


@lru_cache()
def get_settings() -> Settings:
    """
    Get toolkit settings (cached).
    """
    if _settings is not None:
        return _settings
    return Settings()


def reload_settings() -> Settings:
    """
    Reload toolkit settings.

    This function forces a reload of settings from environment variables
    and .env file. Useful for testing or when settings change at runtime.

    Returns:
        Settings: New settings instance
    """
    global _settings
    _settings = Settings()
    get_settings.cache_clear()
    return _settings


# Convenience functions to get specific settings
def get_enumeration_limit() -> int:
    """Get the exact-enumeration dimension limit."""
    return get_settings().enumeration_limit


def get_scale_factor() -> Fraction:
    """Get the parallelepiped dilation factor (the base oracle gap)."""
    return get_settings().scale_factor_value


def get_debug_mode() -> bool:
    """Get debug mode from settings."""
    return get_settings().debug
