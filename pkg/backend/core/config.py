"""
Application Configuration
=========================

Centralized process-level configuration using Pydantic Settings.

WHY THIS FILE EXISTS:
- Single source of truth for settings that are not part of an experiment
- Environment variable parsing with validation (prefix ``GAQ_``)
- Optional ``.env`` loading for local runs

USAGE:
    from backend.core.config import settings

    output_root = settings.output_root
    configure_logging(settings.log_level, settings.log_format)

DESIGN DECISIONS:
- Experiment parameters (episodes, seeds, router options) live in the
  experiment file, not here; this module only covers how the process runs
- Sensible defaults so the CLI works with no environment at all
"""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Process settings loaded from environment variables.

    Every field can be overridden with ``GAQ_<FIELD_NAME>``.
    """

    model_config = SettingsConfigDict(
        env_prefix="GAQ_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO")
    log_format: Literal["text", "keyvalue"] = Field(default="text")

    # Output
    output_root: str = Field(default="runs")

    # Observability
    enable_metrics: bool = Field(default=True)
    enable_tracing: bool = Field(default=True)


# Global settings instance
settings = Settings()
