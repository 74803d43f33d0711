"""
Environment-aware configuration management.

Fit settings live in pydantic models so they can be echoed into model files,
read from YAML, and overridden by RBIG_* environment variables.
"""

import math
import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from rbig_kit.sdk.exceptions import ConfigurationError


class RotationKind(str, Enum):
    """Rotation provider types."""

    PCA = "pca"
    RANDOM = "random"
    ICA = "ica"


class BinPolicy(BaseModel):
    """Histogram binning, clamping and density-floor settings."""

    model_config = {"frozen": True}

    min_bins: int = Field(32, ge=8, description="Lower cap on the bin count")
    max_bins: int = Field(1024, ge=8, description="Upper cap on the bin count")
    clamp_eps: float = Field(1e-7, gt=0.0, lt=0.01, description="CDF clamp ε_u")
    density_floor: float = Field(
        1e-12, gt=0.0, lt=1.0, description="Floor relative to the peak bin density"
    )

    def bins_for(self, n: int) -> int:
        """Bin count for n samples: ceil(sqrt(n)) capped to [min_bins, max_bins]."""
        return int(min(max(math.ceil(math.sqrt(max(n, 1))), self.min_bins), self.max_bins))


class FitConfig(BaseModel):
    """Configuration of one Gaussianization fit."""

    model_config = {"frozen": True}

    rotation_kind: RotationKind = Field(RotationKind.PCA, description="Rotation provider")
    max_iterations: int = Field(100, ge=1, description="Upper bound on the layer count")
    stop_tolerance_bits: Optional[float] = Field(
        None, ge=0.0, description="Marginal negentropy stop threshold; None means 0.005·d"
    )
    gaussianity_alpha: float = Field(0.05, gt=0.0, lt=1.0)
    gaussianity_resamples: int = Field(200, ge=10)
    gaussianity_max_samples: int = Field(1000, ge=100)
    seed: int = Field(0, ge=0)
    bins: BinPolicy = Field(default_factory=BinPolicy)
    pca_safety_check: bool = Field(True, description="Confirm PCA stops with two random layers")
    negentropy_bias_correction: bool = Field(True)

    @field_validator("rotation_kind", mode="before")
    @classmethod
    def _lower_rotation(cls, value: Any) -> Any:
        if isinstance(value, str):
            return value.lower()
        return value

    def tolerance_for(self, dim: int) -> float:
        """Resolved stop tolerance in bits for data of dimension dim."""
        if self.stop_tolerance_bits is not None:
            return self.stop_tolerance_bits
        return 0.005 * dim


class AppConfig(BaseModel):
    """Application configuration."""

    environment: str = Field("development", description="Environment: development, test, production")
    log_level: str = Field("INFO")
    log_format: str = Field("text")
    threads: Optional[int] = Field(None, ge=1, description="Cap on worker threads")
    fit: FitConfig = Field(default_factory=FitConfig)


class ConfigManager:
    """
    Environment-aware configuration manager.

    Automatically detects environment and loads:
    - config/.env.development
    - config/.env.test
    - config/.env.production

    Falls back to plain environment variables if the files don't exist.
    """

    @staticmethod
    def detect_environment() -> str:
        """
        Detect current environment.

        Checks in order:
        1. RBIG_ENV environment variable
        2. PYTEST_CURRENT_TEST (test if set)
        3. Defaults to "development"
        """
        if env := os.getenv("RBIG_ENV"):
            return env.lower()

        if os.getenv("PYTEST_CURRENT_TEST"):
            return "test"

        return "development"

    @staticmethod
    def load(environment: Optional[str] = None) -> AppConfig:
        """
        Load configuration for the specified (or auto-detected) environment.

        Args:
            environment: Environment name (auto-detected if not provided)

        Returns:
            AppConfig instance
        """
        env = environment or ConfigManager.detect_environment()

        config_dir = Path(__file__).parent.parent / "config"
        env_file = config_dir / f".env.{env}"
        if env_file.exists():
            load_dotenv(env_file, override=False)

        fit_overrides: Dict[str, Any] = {}
        if seed := os.getenv("RBIG_SEED"):
            fit_overrides["seed"] = seed
        if rotation := os.getenv("RBIG_ROTATION"):
            fit_overrides["rotation_kind"] = rotation
        if max_iterations := os.getenv("RBIG_MAX_ITERATIONS"):
            fit_overrides["max_iterations"] = max_iterations

        threads = os.getenv("RBIG_THREADS")

        try:
            return AppConfig(
                environment=env,
                log_level=os.getenv("RBIG_LOG_LEVEL", "INFO"),
                log_format=os.getenv("RBIG_LOG_FORMAT", "text"),
                threads=threads or None,
                fit=FitConfig(**fit_overrides),
            )
        except (ValidationError, ValueError) as e:
            raise ConfigurationError(f"Invalid environment configuration: {e}") from e


def load_fit_config(path: Union[str, Path], **overrides: Any) -> FitConfig:
    """
    Read a FitConfig from a YAML file.

    Keyword overrides whose value is not None replace file values.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = yaml.safe_load(handle) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot read fit configuration {path}: {e}") from e

    if not isinstance(raw, dict):
        raise ConfigurationError(f"Fit configuration {path} must be a mapping")

    raw.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return FitConfig(**raw)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid fit configuration {path}: {e}") from e


# Global configuration instance
_config: Optional[AppConfig] = None


def get_config(reload: bool = False) -> AppConfig:
    """
    Get the global configuration instance.

    Args:
        reload: Force reload from environment

    Returns:
        AppConfig instance
    """
    global _config
    if _config is None or reload:
        _config = ConfigManager.load()
    return _config
