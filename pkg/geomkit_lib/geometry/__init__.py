"""Inversive geometry of S^n in the Lorentz light-cone model."""

from geomkit_lib.geometry.points import (
    ExtendedPoint,
    SpherePoint,
    canonical_ray,
    distinct_points,
    from_unit_sphere,
    invert_in_sphere,
    lift,
    lift_all,
    lorentz_inner,
    lorentz_metric,
    point_distance,
    project,
    quadratic_form,
    reflect_in_hyperplane,
    to_unit_sphere,
)
from geomkit_lib.geometry.spheres import (
    Empty,
    Intersection,
    KSphere,
    SinglePoint,
    SphereIntersection,
    affine_sphere,
    center_and_radius,
    contains,
    euclidean_sphere,
    incident_indices,
    intersect,
    membership_residual,
    random_finite_points,
    random_sphere,
    sample_sphere,
    span,
    sphere_dim,
    sphere_equals,
    sphere_from_subspace,
)

__all__ = [
    # Points
    "ExtendedPoint",
    "SpherePoint",
    "canonical_ray",
    "distinct_points",
    "from_unit_sphere",
    "invert_in_sphere",
    "lift",
    "lift_all",
    "lorentz_inner",
    "lorentz_metric",
    "point_distance",
    "project",
    "quadratic_form",
    "reflect_in_hyperplane",
    "to_unit_sphere",
    # Spheres
    "Empty",
    "Intersection",
    "KSphere",
    "SinglePoint",
    "SphereIntersection",
    "affine_sphere",
    "center_and_radius",
    "contains",
    "euclidean_sphere",
    "incident_indices",
    "intersect",
    "membership_residual",
    "random_finite_points",
    "random_sphere",
    "sample_sphere",
    "span",
    "sphere_dim",
    "sphere_equals",
    "sphere_from_subspace",
]
