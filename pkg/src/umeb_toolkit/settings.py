"""
Settings Management Module

Provides pydantic-based configuration management with:
- YAML configuration file loading
- Environment variable overrides (UMEB_*)
- Multi-environment support (development, testing, production)
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "settings" / "config.yaml"


class VerificationSettings(BaseModel):
    """Verification defaults: tolerance and the unextendibility grid."""

    model_config = ConfigDict(extra="ignore")

    tolerance: float = 1e-10
    grid_nt: int = 181
    grid_nphi: int = 360
    unextendible_epsilon: float = 1e-6
    refine: bool = True

    @field_validator("tolerance", "unextendible_epsilon")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("grid_nt", "grid_nphi")
    @classmethod
    def _grid_size(cls, value: int) -> int:
        if value < 2:
            raise ValueError("grid needs at least 2 points per axis")
        return value


class SweepSettings(BaseModel):
    """Parameter sweep defaults."""

    model_config = ConfigDict(extra="ignore")

    seed: int = 7
    count: int = 100
    workers: int = 1
    histogram_bins: int = 10


class Settings(BaseSettings):
    """
    Main application settings with multi-environment support.

    Configuration hierarchy (lowest to highest precedence):
    1. settings/config.yaml (base)
    2. settings/config.{environment}.yaml (environment-specific)
    3. Environment variables (UMEB_*, nested with "__")

    Examples:
        >>> settings = get_settings()
        >>> settings.verification.grid_nt
        181
    """

    model_config = SettingsConfigDict(
        env_prefix="UMEB_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    environment: str = "development"
    log_level: str = "INFO"
    log_json: bool = False

    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # YAML values arrive as init kwargs; environment variables win over them.
        return (env_settings, init_settings, dotenv_settings, file_secret_settings)

    @classmethod
    def load_from_yaml(cls, config_path: Path | None = None) -> "Settings":
        """
        Load settings from YAML configuration file.

        Args:
            config_path: Path to config file (default: settings/config.yaml)

        Returns:
            Settings instance
        """
        if config_path is None:
            config_path = DEFAULT_CONFIG_PATH

        if not config_path.exists():
            return cls()

        with open(config_path) as f:
            config_data = yaml.safe_load(f) or {}

        env = os.getenv("UMEB_ENVIRONMENT", config_data.get("environment", "development"))
        env_config_path = config_path.parent / f"config.{env}.yaml"

        if env_config_path.exists():
            with open(env_config_path) as f:
                env_config = yaml.safe_load(f) or {}
                config_data = cls._deep_merge(config_data, env_config)

        return cls(**config_data)

    @staticmethod
    def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
        """Deep merge two dictionaries."""
        result = base.copy()
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = Settings._deep_merge(result[key], value)
            else:
                result[key] = value
        return result


@lru_cache
def get_settings(config_path: Path | None = None) -> Settings:
    """
    Get cached settings instance.

    Args:
        config_path: Optional path to config file

    Returns:
        Settings instance
    """
    return Settings.load_from_yaml(config_path)


def reload_settings() -> Settings:
    """Reload settings by clearing cache."""
    get_settings.cache_clear()
    return get_settings()


__all__ = [
    "Settings",
    "VerificationSettings",
    "SweepSettings",
    "get_settings",
    "reload_settings",
]
