"""Application configuration loading."""

from __future__ import annotations

import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="JOINTGRAPH_", extra="ignore"
    )

    threads: int | None = Field(default=None, ge=1)
    log_level: str = "WARNING"

    def resolved_threads(self, override: int | None = None) -> int:
        """Return the worker cap, preferring an explicit override."""
        if override is not None:
            return override
        if self.threads is not None:
            return self.threads
        return os.cpu_count() or 1


@lru_cache
def get_settings() -> Settings:
    """Return cached application settings."""
    return Settings()
