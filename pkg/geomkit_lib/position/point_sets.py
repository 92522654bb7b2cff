"""Finite point sets of S^n with duplicates merged."""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, SpherePoint, distinct_points, lift, project

LOGGER = psnap_get_logger("geomkit_lib.position.point_sets")


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    A set B of pairwise distinct points of S^n.

    Build with ``from_points`` or ``from_rays``; both merge points that are equal under
    εmember and record how many were merged in ``merged``.
    """

    n: int
    points: tuple[SpherePoint, ...]
    merged: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GeomKitInputError(f"dimension n must be >= 1, got {self.n}")
        for p in self.points:
            if p.n != self.n:
                raise GeomKitInputError(f"point of S^{p.n} in a point set of S^{self.n}")

    @classmethod
    def from_points(cls, points: Sequence[ExtendedPoint], n: int, tol: Tolerances | None = None) -> "PointSet":
        return cls.from_rays([lift(p, n) for p in points], n, tol)

    @classmethod
    def from_rays(cls, rays: Sequence[SpherePoint], n: int, tol: Tolerances | None = None) -> "PointSet":
        kept, merged = distinct_points(rays, tol)
        if merged:
            LOGGER.debug(f"merged {merged} duplicate point(s) into a set of {len(kept)}")
        return cls(n=n, points=tuple(kept), merged=merged)

    def extended_points(self) -> list[ExtendedPoint]:
        return [project(p) for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[SpherePoint]:
        return iter(self.points)
