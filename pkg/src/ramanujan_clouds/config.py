"""Configuration management using pydantic-settings."""

import logging
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)

NumericMode = Literal["exact", "float"]
OutputFormat = Literal["json", "csv"]


class ToleranceConfig(BaseSettings):
    """Equality tolerances used when values are not exact."""

    model_config = SettingsConfigDict(env_prefix="RK_TOLERANCES__")

    coefficient: float = Field(default=1e-12, ge=0.0, description="Equality of coefficient values")
    identity: float = Field(default=1e-10, ge=0.0, description="Partial-sum identity residuals")
    cloud: float = Field(default=1e-9, ge=0.0, description="Equality-style postconditions of cloud constructions")


class VerdictConfig(BaseSettings):
    """Heuristic convergence verdict criteria."""

    model_config = SettingsConfigDict(env_prefix="RK_VERDICT__")

    cauchy_window: int = Field(default=5, ge=2, description="Number of trailing checkpoints in the Cauchy window")
    cauchy_rel_tol: float = Field(default=1e-6, gt=0.0, description="Relative spread accepted in the Cauchy window")
    min_divergence_exponent: float = Field(default=0.05, description="Smallest fitted exponent reported as divergence")
    min_fit_quality: float = Field(default=0.99, ge=0.0, le=1.0, description="Smallest R^2 of a divergence fit")


class ScanConfig(BaseSettings):
    """Limits and partitioning of long partial-sum scans."""

    model_config = SettingsConfigDict(env_prefix="RK_SCAN__")

    budget: int = Field(default=10**7, gt=0, description="Largest number of terms in a single scan")
    partition_size: int = Field(default=1 << 16, gt=0, description="Terms per partition of a partitioned scan")
    workers: int = Field(default=1, ge=1, description="Threads used for partitioned scans")
    dense_threshold: int = Field(default=20_000, gt=0, description="Scan length from which coprime scans use numpy")


class Settings(BaseSettings):
    """Main toolkit settings aggregating all configuration sections."""

    model_config = SettingsConfigDict(
        env_prefix="RK_",
        env_nested_delimiter="__",
        extra="ignore",
    )

    sieve_bound: int = Field(default=10**7, ge=16, description="Largest integer the factorization sieve accepts")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    verdict: VerdictConfig = Field(default_factory=VerdictConfig)
    scan: ScanConfig = Field(default_factory=ScanConfig)

    config_file: Path | None = Field(default=None, description="Path to YAML configuration file")

    @classmethod
    def from_yaml(cls, yaml_path: Path) -> "Settings":
        """Load settings from a YAML configuration file.

        Args:
            yaml_path: Path to the YAML configuration file.

        Returns:
            Settings instance with values from YAML merged with env vars.

        """
        with yaml_path.open() as f:
            yaml_config = yaml.safe_load(f) or {}

        extra: dict[str, int] = {}
        if "sieve_bound" in yaml_config:
            extra["sieve_bound"] = int(yaml_config["sieve_bound"])

        return cls(
            tolerances=ToleranceConfig(**yaml_config.get("tolerances", {})),
            verdict=VerdictConfig(**yaml_config.get("verdict", {})),
            scan=ScanConfig(**yaml_config.get("scan", {})),
            config_file=yaml_path,
            **extra,
        )


class RunConfig(BaseModel):
    """Per-invocation options shared by every CLI subcommand."""

    output_format: OutputFormat = Field(default="json", description="Output document format")
    numeric: NumericMode = Field(default="exact", description="Exact rationals or floating complex values")
    tolerance: float | None = Field(default=None, ge=0.0, description="Override for every equality tolerance")
    seed: int = Field(default=0, description="Seed of random generators")

    @property
    def exact(self) -> bool:
        """Whether documents are parsed into exact rationals."""
        return self.numeric == "exact"


def load_settings(config_path: Path | None = None) -> Settings:
    """Load toolkit settings from config file and environment variables.

    Args:
        config_path: Optional path to YAML configuration file.

    Returns:
        Settings instance with merged configuration.

    """
    if config_path and config_path.exists():
        return Settings.from_yaml(config_path)
    return Settings()


_active: Settings | None = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them from the environment on first use."""
    global _active  # noqa: PLW0603
    if _active is None:
        _active = Settings()
    return _active


def configure(settings: Settings) -> None:
    """Replace the process-wide settings."""
    global _active  # noqa: PLW0603
    logger.debug("Configuring toolkit with sieve bound %d", settings.sieve_bound)
    _active = settings
