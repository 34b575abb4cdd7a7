"""Configuration management for barcode computations."""

import os
from functools import lru_cache
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class BarcodeConfig(BaseSettings):
    """Numerical and runtime configuration."""

    model_config = SettingsConfigDict(
        env_file=os.getenv("ENV_FILE", ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
        env_prefix="BARC_",
    )

    # Comparisons of action values
    tol: float = Field(default=1e-9, ge=0.0, description="Absolute tolerance for real comparisons")
    bisection_tol: float = Field(
        default=1e-12, gt=0.0, description="Root-finding tolerance for the period-action map"
    )

    # Orthogonality checks
    exhaustive_cap: int = Field(
        default=20, ge=1, le=20, description="Largest family size checked exhaustively"
    )

    # Profiles
    convexity_samples: int = Field(
        default=1000, ge=10, description="Sample grid size for convexity certification"
    )

    # Entropy estimation
    slope_tolerance: float = Field(
        default=0.02, ge=0.0, description="Fit tolerance for epsilon-profile monotonicity"
    )
    eps_grid_points: int = Field(default=6, ge=1, description="Points of the default epsilon grid")

    # Logging
    log_level: str = Field(default="INFO", description="Logging level for the CLI")
    log_json: bool = Field(default=False, description="Emit JSON-structured logs")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level name."""
        v = v.strip().upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return v


def load_config(env_file: Optional[str] = None) -> BarcodeConfig:
    """Load and validate configuration from environment.

    Args:
        env_file: Optional path to .env file. If not provided, uses:
                  1. ENV_FILE environment variable
                  2. Environment-specific file (.env.{ENV})
                  3. Default .env file

    Environment priority (highest to lowest):
        1. System environment variables (e.g. BARC_TOL)
        2. .env file
        3. Default values

    Examples:
        config = load_config()

        # export BARC_TOL=1e-12
        config = load_config()  # config.tol == 1e-12
    """
    if env_file:
        os.environ["ENV_FILE"] = env_file
    elif "ENV_FILE" not in os.environ:
        env = os.getenv("ENV", "development")
        env_specific_file = f".env.{env}"
        if os.path.exists(env_specific_file):
            os.environ["ENV_FILE"] = env_specific_file

    return BarcodeConfig(_env_file=os.getenv("ENV_FILE", ".env"))  # type: ignore[call-arg]


@lru_cache(maxsize=1)
def get_config() -> BarcodeConfig:
    """Return the process-wide configuration, loaded once."""
    return load_config()


def resolve_tol(tol: Optional[float] = None) -> float:
    """Return ``tol`` or the configured default tolerance."""
    return get_config().tol if tol is None else tol


if __name__ == "__main__":
    config = load_config()
    print(f"Tolerance: {config.tol}")
    print(f"Bisection tolerance: {config.bisection_tol}")
    print(f"Exhaustive cap: {config.exhaustive_cap}")
    print(f"Default epsilon grid points: {config.eps_grid_points}")
