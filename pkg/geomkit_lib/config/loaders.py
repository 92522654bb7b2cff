"""
Settings loading for geomkit-lib.

Resolution order for ``load_settings``:
1. Explicit ``path`` argument
2. ``GEOM_KIT_CONFIG`` environment variable
3. Built-in defaults

``GEOM_KIT_SEED`` overrides the seed in every case.
"""

import os
from pathlib import Path
from typing import Any

import yaml
from partsnap_logger.logging import psnap_get_logger
from pydantic import ValidationError

from geomkit_lib.any.exceptions import GeomKitConfigurationError
from geomkit_lib.config.schemas import AnalysisSettings

LOGGER = psnap_get_logger("geomkit_lib.config.loaders")

CONFIG_ENV_VAR = "GEOM_KIT_CONFIG"
SEED_ENV_VAR = "GEOM_KIT_SEED"


def seed_from_environment(default: int | None = None) -> int | None:
    """
    Read the default seed from ``GEOM_KIT_SEED``.

    Returns
    -------
        The parsed seed, or ``default`` when the variable is unset or empty

    Raises
    ------
        GeomKitConfigurationError: If the variable is not a non-negative integer

    """
    raw = os.environ.get(SEED_ENV_VAR, "").strip()
    if not raw:
        return default
    try:
        seed = int(raw)
    except ValueError:
        raise GeomKitConfigurationError(f"{SEED_ENV_VAR} must be an integer, got '{raw}'")  # noqa: B904
    if seed < 0:
        raise GeomKitConfigurationError(f"{SEED_ENV_VAR} must be non-negative, got {seed}")
    return seed


def _read_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise GeomKitConfigurationError(f"Settings file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise GeomKitConfigurationError(f"Invalid YAML in settings file: {path}\nError: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise GeomKitConfigurationError(f"Settings file must contain a YAML dictionary: {path}")
    return data


def load_settings(path: Path | None = None) -> AnalysisSettings:
    """
    Load analysis settings.

    Args:
    ----
        path: Optional YAML settings file; defaults to ``$GEOM_KIT_CONFIG`` if set

    Returns:
    -------
        Validated AnalysisSettings

    Raises:
    ------
        GeomKitConfigurationError: If the file is missing, not YAML, or fails validation

    Example:
    -------
        ```python
        from geomkit_lib.config import load_settings

        settings = load_settings()
        tol = settings.tolerances
        ```

    """
    if path is None:
        env_path = os.environ.get(CONFIG_ENV_VAR, "").strip()
        path = Path(env_path) if env_path else None

    data: dict[str, Any] = {}
    if path is not None:
        data = _read_yaml(path)
        LOGGER.debug(f"Loaded settings from {path}")

    seed = seed_from_environment()
    if seed is not None:
        data["seed"] = seed

    try:
        return AnalysisSettings.model_validate(data)
    except ValidationError as e:
        source = path if path is not None else "defaults"
        raise GeomKitConfigurationError(f"Invalid settings ({source}):\n{e}") from e
