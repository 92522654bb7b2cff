"""GeomKit configuration management."""

from geomkit_lib.config.loaders import CONFIG_ENV_VAR, SEED_ENV_VAR, load_settings, seed_from_environment
from geomkit_lib.config.schemas import AnalysisSettings, Tolerances

__all__ = [
    "AnalysisSettings",
    "Tolerances",
    "load_settings",
    "seed_from_environment",
    "CONFIG_ENV_VAR",
    "SEED_ENV_VAR",
]
