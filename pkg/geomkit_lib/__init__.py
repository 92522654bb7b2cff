"""
GeomKit Library - inversive geometry on S^n and Möbius recovery from black-box maps.

This library provides:
- The Lorentz light-cone model of S^n: points as null rays, k-spheres as Lorentzian subspaces
- The Möbius group as Lorentz matrices (inversions, reflections, similarities, fitting)
- Circular and spherical general-position checks with witnesses
- Weak circle/sphere preservation checks and recovery of Möbius maps from samples

Every geometric decision goes through the configured tolerances (see ``geomkit_lib.config``).
"""

# ============================================================================
# CORE EXPORTS (from any/)
# ============================================================================

from geomkit_lib.any.exceptions import (
    GeomKitConfigurationError as ConfigurationError,
)
from geomkit_lib.any.exceptions import (
    GeomKitDegenerateRayError as DegenerateRayError,
)
from geomkit_lib.any.exceptions import (
    GeomKitError,
    GeomKitInputError,
)
from geomkit_lib.any.exceptions import (
    GeomKitIllConditionedError as IllConditionedError,
)
from geomkit_lib.any.exceptions import (
    GeomKitInconsistentError as InconsistentError,
)
from geomkit_lib.any.exceptions import (
    GeomKitInsufficientDataError as InsufficientDataError,
)
from geomkit_lib.any.exceptions import (
    GeomKitTooFewPointsError as TooFewPointsError,
)
from geomkit_lib.any.types import PositionMode, RecoveryStrategy
from geomkit_lib.geometry import ExtendedPoint, KSphere, SpherePoint, lift, project, span
from geomkit_lib.moebius import MoebiusMap

try:
    from geomkit_lib._version import __version__
except ImportError:
    __version__ = "0.0.0.dev0"

__all__ = [
    # Exceptions
    "GeomKitError",
    "GeomKitInputError",
    "ConfigurationError",
    "DegenerateRayError",
    "IllConditionedError",
    "InconsistentError",
    "InsufficientDataError",
    "TooFewPointsError",
    # Types
    "PositionMode",
    "RecoveryStrategy",
    # Geometry
    "ExtendedPoint",
    "SpherePoint",
    "KSphere",
    "lift",
    "project",
    "span",
    "MoebiusMap",
    # Version
    "__version__",
]
