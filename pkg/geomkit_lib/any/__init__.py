"""
Any - Shared components for GeomKit.

Exceptions, protocols, enum types, the IoC container and utilities used by every
domain subpackage.
"""

from geomkit_lib.any.container import (
    GeomKitIoCContainer,
    container,
    get_settings,
    get_task_runner,
    get_tolerances,
    reset_container,
)
from geomkit_lib.any.exceptions import (
    GeomKitConfigurationError,
    GeomKitDegenerateRayError,
    GeomKitError,
    GeomKitIllConditionedError,
    GeomKitInconsistentError,
    GeomKitInputError,
    GeomKitInsufficientDataError,
    GeomKitNoDataError,
    GeomKitTooFewPointsError,
    GeomKitTooLargeError,
)
from geomkit_lib.any.protocols import MapOracle

# Re-export types from any/types/
from geomkit_lib.any.types import CheckMode, GeneratorKind, PositionMode, RecoveryStrategy
from geomkit_lib.any.utils import OrderedTaskRunner, colex_combinations

__all__ = [
    # Exceptions
    "GeomKitError",
    "GeomKitDegenerateRayError",
    "GeomKitTooFewPointsError",
    "GeomKitIllConditionedError",
    "GeomKitInsufficientDataError",
    "GeomKitInconsistentError",
    "GeomKitNoDataError",
    "GeomKitTooLargeError",
    "GeomKitConfigurationError",
    "GeomKitInputError",
    # Protocols
    "MapOracle",
    # Types
    "CheckMode",
    "GeneratorKind",
    "PositionMode",
    "RecoveryStrategy",
    # Utils
    "OrderedTaskRunner",
    "colex_combinations",
    # DI Container
    "GeomKitIoCContainer",
    "container",
    "get_settings",
    "get_task_runner",
    "get_tolerances",
    "reset_container",
]
