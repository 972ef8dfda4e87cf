"""
Configuration module using Pydantic Settings.
Loads from .env file and environment variables.
"""

from datetime import datetime
from pathlib import Path
from typing import Literal
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine configuration with validation."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # === Logging ===
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    logs_dir: Path = Path("./logs")
    log_to_file: bool = False

    # === Roots ===
    # Largest coordinate of a highest root over all ADE types (E8).
    root_search_box: int = 6

    # === Walls ===
    default_degree_bound: int = 8
    max_workers: int = 1
    verify_cones: bool = True

    # === SVG slices ===
    svg_size: int = 600
    svg_significant_digits: int = 12

    @property
    def log_file(self) -> Path:
        """Path of today's log file."""
        return self.logs_dir / f"wallchamber_{datetime.now().strftime('%Y%m%d')}.log"


# Singleton instance
settings = Settings()
