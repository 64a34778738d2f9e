"""Configuration management for the tame lattice toolkit."""

import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class ConfigurationError(ValueError):
    """Raised for invalid configuration values or exceeded dimension caps."""


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


@dataclass
class Config:
    """Configuration class for the tame lattice toolkit."""

    enumeration_budget: int = 10**8
    max_dimension: int = 64
    box_ceiling: int = 10**8
    workers: int = 1
    log_level: str = "INFO"
    log_file: str = "logs/tamelat.log"

    @classmethod
    def from_env(cls) -> "Config":
        """Create configuration from environment variables."""
        return cls(
            enumeration_budget=_int_from_env("TAMELAT_BUDGET", cls.enumeration_budget),
            max_dimension=_int_from_env("TAMELAT_MAX_DIM", cls.max_dimension),
            box_ceiling=_int_from_env("TAMELAT_BOX_CEILING", cls.box_ceiling),
            workers=_int_from_env("TAMELAT_WORKERS", cls.workers),
            log_level=os.getenv("LOG_LEVEL", cls.log_level),
            log_file=os.getenv("LOG_FILE", cls.log_file),
        )

    def validate(self) -> None:
        """Validate configuration parameters."""
        if self.enumeration_budget < 1:
            raise ConfigurationError("Enumeration budget must be positive")

        if self.max_dimension < 1:
            raise ConfigurationError("Maximum dimension must be positive")

        if self.box_ceiling < 1:
            raise ConfigurationError("Box ceiling must be positive")

        if self.workers < 1:
            raise ConfigurationError("Worker count must be at least 1")

        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigurationError(f"Invalid log level: {self.log_level}")


@lru_cache(maxsize=1)
def load_config() -> Config:
    """Return the validated process-wide configuration (cached)."""
    config = Config.from_env()
    config.validate()
    return config
