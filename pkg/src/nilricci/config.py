"""Configuration loading and validation."""

import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

TOLERANCE_ENV = "TOLERANCE"


class Tolerances(BaseModel):
    """
    Numeric thresholds used across the library.

    Defaults are tuned for O(1) entries in dimension 5. Override any of them
    in the ``[tolerances]`` table of a config file, or the solver residual
    through the ``TOLERANCE`` environment variable:

        tol = Tolerances(residual=1e-6)
    """

    zero: float = Field(default=1e-10, gt=0)
    """
    Pivot and rank threshold (relative to the largest pivot for Der(g));
    also the margin for strict inequalities.
    """

    symmetry: float = Field(default=1e-12, gt=0)
    """Maximum asymmetry accepted for Gram matrices and prescribed tensors."""

    pattern: float = Field(default=1e-8, gt=0)
    """Largest magnitude accepted outside a bracket or representative pattern."""

    equality: float = Field(default=1e-9, gt=0)
    """Residual accepted for equality conditions and linear compatibility."""

    residual: float = Field(default=1e-8, gt=0)
    """Verification residual ||Ric - t^2 T|| accepted by the solver."""

    clamp: float = Field(default=1e-10, gt=0)
    """Squared coefficients in [-clamp, 0) are clamped to 0."""

    branch: float = Field(default=1e-10, gt=0)
    """Threshold selecting the first A_{4,1}+A_1 family."""

    derivation: float = Field(default=1e-9, gt=0)
    """Defect accepted by is_derivation for every computed basis element of Der(g)."""

    singular: float = Field(default=1e-12, gt=0)
    """|det| below which a matrix is treated as singular."""


class Config(BaseModel):
    """Root configuration."""

    tolerances: Tolerances = Field(default_factory=Tolerances)
    batch_workers: int = Field(default=4, ge=1)
    """Thread count for ``solve --batch``."""


def _apply_env(tolerances: Tolerances) -> Tolerances:
    override = os.environ.get(TOLERANCE_ENV)
    if not override:
        return tolerances
    try:
        value = float(override)
    except ValueError as e:
        raise ValueError(f"{TOLERANCE_ENV} must be a number, got '{override}'") from e
    if value <= 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {value}")
    return tolerances.model_copy(update={"residual": value})


def load_config(config_path: Path | None = None) -> Config:
    """
    Load configuration from a TOML file.

    Args:
        config_path: Path to config file. If None, defaults are used.

    Returns:
        Validated Config object with the TOLERANCE override applied.

    Raises:
        FileNotFoundError: If an explicit config file doesn't exist.
        ValueError: If config is invalid.
    """
    if config_path is None:
        config = Config()
    else:
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
        with open(config_path, "rb") as f:
            try:
                config_dict = tomllib.load(f)
            except tomllib.TOMLDecodeError as e:
                raise ValueError(f"Invalid TOML in {config_path}: {e}") from e
        try:
            config = Config(**config_dict)
        except ValidationError as e:
            raise ValueError(f"Invalid config {config_path}: {e}") from e

    return config.model_copy(update={"tolerances": _apply_env(config.tolerances)})


def get_tolerances() -> Tolerances:
    """Default tolerances with the TOLERANCE environment override applied."""
    return _apply_env(Tolerances())
