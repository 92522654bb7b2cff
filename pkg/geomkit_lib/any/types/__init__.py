"""GeomKit type definitions (enums)."""

from geomkit_lib.any.types.modes import CheckMode, GeneratorKind, PositionMode, RecoveryStrategy

__all__ = [
    "CheckMode",
    "GeneratorKind",
    "PositionMode",
    "RecoveryStrategy",
]
