"""Pytest configuration and fixtures for geomkit-lib tests."""

from collections.abc import Generator

import numpy as np
import pytest

from geomkit_lib.any.container import reset_container
from geomkit_lib.config.loaders import CONFIG_ENV_VAR, SEED_ENV_VAR
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, SpherePoint, lift


@pytest.fixture(autouse=True)
def fresh_container(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Every test starts from default settings with no GEOM_KIT_* variables set."""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    reset_container()
    yield
    reset_container()


@pytest.fixture
def tolerances() -> Tolerances:
    return Tolerances()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def finite(*coords: float) -> ExtendedPoint:
    return ExtendedPoint.finite(list(coords))


def lifted(n: int, *points: ExtendedPoint) -> list[SpherePoint]:
    return [lift(p, n) for p in points]
