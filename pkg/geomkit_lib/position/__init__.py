"""Circular and spherical general position of finite point sets."""

from geomkit_lib.position.checks import (
    GPReport,
    GPWitness,
    brute_force_gp_oracle,
    check_general_position,
    circular_general_position,
    minimum_size,
    spherical_general_position,
    witness_sphere,
)
from geomkit_lib.position.point_sets import PointSet

__all__ = [
    "GPReport",
    "GPWitness",
    "PointSet",
    "brute_force_gp_oracle",
    "check_general_position",
    "circular_general_position",
    "minimum_size",
    "spherical_general_position",
    "witness_sphere",
]
