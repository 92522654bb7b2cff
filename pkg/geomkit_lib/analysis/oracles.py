"""
Black-box maps T: S^n -> S^n.

Everything here satisfies the ``MapOracle`` protocol: a dimension ``n`` and a
deterministic ``query``. ``MapTable`` is the finite sample form of a map; it doubles as
an oracle through ``TableOracle``.
"""

import hashlib
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_tolerances
from geomkit_lib.any.exceptions import GeomKitInputError, GeomKitNoDataError
from geomkit_lib.any.protocols import MapOracle
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, SpherePoint, lift, point_distance
from geomkit_lib.moebius.maps import MoebiusMap, apply

LOGGER = psnap_get_logger("geomkit_lib.analysis.oracles")


@dataclass(frozen=True, eq=False)
class MapTable:
    """
    Sample pairs (domain point, image point) of a map of S^n.

    Domain points are pairwise distinct under εmember; the lifted rays are cached in
    ``domain_rays`` and ``image_rays``.
    """

    n: int
    pairs: tuple[tuple[ExtendedPoint, ExtendedPoint], ...]
    domain_rays: tuple[SpherePoint, ...] = field(init=False)
    image_rays: tuple[SpherePoint, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GeomKitInputError(f"dimension n must be >= 1, got {self.n}")
        for i, (x, y) in enumerate(self.pairs):
            try:
                x.check_dim(self.n)
                y.check_dim(self.n)
            except GeomKitInputError as e:
                raise GeomKitInputError(f"pair {i}: {e}") from e
        object.__setattr__(self, "domain_rays", tuple(lift(x, self.n) for x, _ in self.pairs))
        object.__setattr__(self, "image_rays", tuple(lift(y, self.n) for _, y in self.pairs))

    @classmethod
    def from_pairs(
        cls, pairs: Sequence[tuple[ExtendedPoint, ExtendedPoint]], n: int, tol: Tolerances | None = None
    ) -> "MapTable":
        """
        Build a table and check that it describes a function.

        Raises
        ------
            GeomKitInputError: If a domain point appears twice

        """
        tol = tol if tol is not None else get_tolerances()
        table = cls(n=n, pairs=tuple(pairs))
        rays = table.domain_rays
        for i in range(len(rays)):
            for j in range(i):
                if point_distance(rays[i], rays[j]) <= tol.member:
                    raise GeomKitInputError(f"domain point of pair {i} repeats pair {j}")
        return table

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def domain(self) -> list[ExtendedPoint]:
        return [x for x, _ in self.pairs]

    @property
    def images(self) -> list[ExtendedPoint]:
        return [y for _, y in self.pairs]

    def subset(self, indices: Sequence[int]) -> "MapTable":
        return MapTable(n=self.n, pairs=tuple(self.pairs[i] for i in indices))

    def lookup(self, p: ExtendedPoint, tol: Tolerances | None = None) -> ExtendedPoint:
        """
        Image of ``p`` if ``p`` is a domain point.

        Raises
        ------
            GeomKitNoDataError: If ``p`` is not in the table

        """
        tol = tol if tol is not None else get_tolerances()
        v = lift(p, self.n)
        for ray, (_, y) in zip(self.domain_rays, self.pairs, strict=True):
            if point_distance(v, ray) <= tol.member:
                return y
        raise GeomKitNoDataError(f"no table entry for {p}")


@dataclass(frozen=True)
class MoebiusOracle:
    """Exact evaluation of a known Möbius map."""

    moebius: MoebiusMap

    @property
    def n(self) -> int:
        return self.moebius.n

    def query(self, p: ExtendedPoint) -> ExtendedPoint:
        return apply(self.moebius, p)


@dataclass(frozen=True)
class FiniteImageOracle:
    """
    A map onto a fixed finite list of images.

    Each domain point is assigned an image by hashing its coordinates (rounded to 9
    decimals) together with ``assignment_seed``, so the assignment is arbitrary but
    reproducible across runs and processes.
    """

    n: int
    images: tuple[ExtendedPoint, ...]
    assignment_seed: int = 0

    def __post_init__(self) -> None:
        if not self.images:
            raise GeomKitInputError("a finite-image oracle needs at least one image")
        for y in self.images:
            y.check_dim(self.n)

    def assignment(self, p: ExtendedPoint) -> int:
        """Index into ``images`` for ``p``."""
        p.check_dim(self.n)
        key = "inf" if p.coords is None else ",".join(f"{round(c, 9) + 0.0:.9f}" for c in p.coords)
        digest = hashlib.blake2b(f"{self.assignment_seed}|{key}".encode(), digest_size=8).digest()
        return int.from_bytes(digest, "big") % len(self.images)

    def query(self, p: ExtendedPoint) -> ExtendedPoint:
        return self.images[self.assignment(p)]


@dataclass(frozen=True)
class TableOracle:
    """Lookup in a ``MapTable``; queries off the table raise ``GeomKitNoDataError``."""

    table: MapTable

    @property
    def n(self) -> int:
        return self.table.n

    def query(self, p: ExtendedPoint) -> ExtendedPoint:
        return self.table.lookup(p)


@dataclass(frozen=True)
class FunctionOracle:
    """Any deterministic callable on R^n ∪ {∞}, e.g. a polynomial counterexample."""

    n: int
    function: Callable[[ExtendedPoint], ExtendedPoint]
    name: str = "function"

    def query(self, p: ExtendedPoint) -> ExtendedPoint:
        p.check_dim(self.n)
        return self.function(p)


@dataclass(frozen=True)
class ComposedOracle:
    """outer ∘ inner."""

    outer: MapOracle
    inner: MapOracle

    def __post_init__(self) -> None:
        if self.outer.n != self.inner.n:
            raise GeomKitInputError(f"cannot compose oracles on S^{self.outer.n} and S^{self.inner.n}")

    @property
    def n(self) -> int:
        return self.inner.n

    def query(self, p: ExtendedPoint) -> ExtendedPoint:
        return self.outer.query(self.inner.query(p))


def _cube(p: ExtendedPoint) -> ExtendedPoint:
    if p.coords is None:
        return p
    return ExtendedPoint.finite(np.asarray(p.coords) ** 3)


def cubing_oracle(n: int) -> FunctionOracle:
    """x ↦ (x_1^3, ..., x_n^3) with ∞ fixed: a bijection of S^n that bends circles."""
    return FunctionOracle(n=n, function=_cube, name="cube")
