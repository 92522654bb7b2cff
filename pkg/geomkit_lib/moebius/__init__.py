"""The generalized Möbius group: construction, group operations, action and fitting."""

from geomkit_lib.moebius.fitting import (
    Correspondence,
    RestrictedFit,
    extend_to_ambient,
    fit_between_spheres,
    fit_from_correspondences,
    max_residual,
    residuals,
)
from geomkit_lib.moebius.maps import (
    MoebiusMap,
    apply,
    apply_to_ray,
    apply_to_sphere,
    compose,
    compose_all,
    from_inversion,
    from_linear_fractional,
    from_reflection,
    from_similarity,
    from_translation,
    identity,
    inverse,
    is_lorentz,
    maps_agree,
    random_moebius,
)

__all__ = [
    # Maps
    "MoebiusMap",
    "apply",
    "apply_to_ray",
    "apply_to_sphere",
    "compose",
    "compose_all",
    "from_inversion",
    "from_linear_fractional",
    "from_reflection",
    "from_similarity",
    "from_translation",
    "identity",
    "inverse",
    "is_lorentz",
    "maps_agree",
    "random_moebius",
    # Fitting
    "Correspondence",
    "RestrictedFit",
    "extend_to_ambient",
    "fit_between_spheres",
    "fit_from_correspondences",
    "max_residual",
    "residuals",
]
