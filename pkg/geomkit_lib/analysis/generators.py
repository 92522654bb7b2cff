"""
Sample tables and point sets for checks, recovery and the acceptance suites.

Generated domains are structured so that every advertised property is testable from
the table alone: an (n-1)-sphere with n+3 points, a 2-sphere with six points, a nested
flag S_2 ⊂ S_3 ⊂ ... ⊂ S_{n-1} with three new points per step, a few circles with
``samples_per_circle`` points each, and generic padding. Structured points come first so
colexicographic subset searches reach them early.
"""

from collections.abc import Sequence

import numpy as np
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_settings, get_tolerances
from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.any.protocols import MapOracle
from geomkit_lib.analysis.oracles import FiniteImageOracle, MapTable, MoebiusOracle
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, lift, project
from geomkit_lib.geometry.spheres import KSphere, random_finite_points, random_sphere, sample_sphere, sphere_from_subspace
from geomkit_lib.moebius.maps import MoebiusMap, random_moebius
from geomkit_lib.position.checks import spherical_general_position
from geomkit_lib.position.point_sets import PointSet

LOGGER = psnap_get_logger("geomkit_lib.analysis.generators")

S2_POINTS = 6
CHAIN_STEP_POINTS = 3


def make_table(oracle: MapOracle, domain_points: Sequence[ExtendedPoint], n: int) -> MapTable:
    """
    Evaluate ``oracle`` on ``domain_points`` in order.

    Raises
    ------
        GeomKitNoDataError: Propagated from table-backed oracles

    """
    if oracle.n != n:
        raise GeomKitInputError(f"oracle maps S^{oracle.n}, table requested for n={n}")
    return MapTable.from_pairs([(p, oracle.query(p)) for p in domain_points], n)


def make_finite_image_oracle(images: Sequence[ExtendedPoint], assignment_seed: int, n: int) -> FiniteImageOracle:
    """
    A map of S^n onto ``images`` with a reproducible arbitrary assignment.

    With at most n+1 images the map is weakly sphere-preserving, with at most 3 it is
    weakly circle-preserving; beyond those counts neither is guaranteed.
    """
    if len(images) > n + 1:
        LOGGER.warning(f"{len(images)} images exceed n+1 = {n + 1}; weak sphere preservation is not guaranteed")
    elif len(images) > 3:
        LOGGER.warning(f"{len(images)} images exceed 3; weak circle preservation is not guaranteed")
    return FiniteImageOracle(n=n, images=tuple(images), assignment_seed=assignment_seed)


def chain_minimum(n: int) -> int:
    """Points needed for the 2-sphere and the nested flag up to S_{n-1}."""
    return S2_POINTS + CHAIN_STEP_POINTS * max(0, n - 3)


def _flag(n: int, rng: np.random.Generator, tol: Tolerances) -> list[KSphere]:
    """Nested spheres S_2 ⊂ S_3 ⊂ ... ⊂ S_{n-1}; each step adds one random point's direction."""
    flag = [random_sphere(n, 2, rng, tol)]
    while flag[-1].k < n - 1:
        x = lift(ExtendedPoint.finite(rng.standard_normal(n)), n)
        flag.append(sphere_from_subspace(np.column_stack([flag[-1].basis, x.vector]), tol))
    return flag


def _draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**31 - 1))


def sample_chain_domain(
    n: int, count: int, seed: int, circles: int = 2, hypersphere: bool = True, tol: Tolerances | None = None
) -> list[ExtendedPoint]:
    """
    Draw ``count`` domain points carrying a 2-sphere witness and a chain up to S^n.

    Layout, in order: n+3 points on a random (n-1)-sphere (if ``hypersphere`` and room
    remains), six points on a random 2-sphere S_2, three points on each S_{k+1} of a random
    flag for k < n-1, ``circles`` random circles with ``samples_per_circle`` points each (while
    room remains) and generic points. S_2 and the flag are always present.

    Raises
    ------
        GeomKitInputError: If n < 2 or ``count`` cannot hold the 2-sphere and the flag

    """
    tol = tol if tol is not None else get_tolerances()
    if n < 2:
        raise GeomKitInputError(f"a chain domain needs n >= 2, got {n}")
    minimum = chain_minimum(n)
    if count < minimum:
        raise GeomKitInputError(f"a chain domain in S^{n} needs at least {minimum} points, got {count}")
    rng = np.random.default_rng(seed)
    per_circle = get_settings().samples_per_circle

    flag = _flag(n, rng, tol)
    chain = sample_sphere(flag[0], S2_POINTS, _draw_seed(rng), tol)
    for sphere in flag[1:]:
        chain += sample_sphere(sphere, CHAIN_STEP_POINTS, _draw_seed(rng), tol)

    room = count - len(chain)
    head = []
    if hypersphere and n >= 3 and room >= n + 3:
        head = sample_sphere(random_sphere(n, n - 1, rng, tol), n + 3, _draw_seed(rng), tol)
        room -= len(head)
    extra = []
    for _ in range(circles):
        if room < per_circle:
            break
        extra += sample_sphere(random_sphere(n, 1, rng, tol), per_circle, _draw_seed(rng), tol)
        room -= per_circle

    points = [project(v, tol) for v in head + chain + extra]
    points += random_finite_points(n, room, rng)
    return points


def generate_moebius_table(n: int, count: int, seed: int) -> tuple[MapTable, MoebiusMap]:
    """A random Möbius map and its table on a chain domain; both recovery strategies succeed on it."""
    rng = np.random.default_rng(seed)
    moebius = random_moebius(n, rng)
    domain = sample_chain_domain(n, count, _draw_seed(rng))
    LOGGER.info(f"Generated Möbius table: n={n}, {count} pairs, map {moebius!r}")
    return make_table(MoebiusOracle(moebius), domain, n), moebius


def generate_finite_image_table(n: int, count: int, seed: int, image_count: int = 3) -> MapTable:
    """A table of a finite-image map with ``image_count`` random images on a chain domain."""
    if image_count < 1:
        raise GeomKitInputError(f"a finite-image table needs at least one image, got {image_count}")
    rng = np.random.default_rng(seed)
    images = random_finite_points(n, image_count, rng)
    oracle = make_finite_image_oracle(images, _draw_seed(rng), n)
    domain = sample_chain_domain(n, count, _draw_seed(rng))
    return make_table(oracle, domain, n)


def generate_gp_set(n: int, count: int, seed: int, attempts: int = 10, tol: Tolerances | None = None) -> PointSet:
    """
    Random points in spherical general position.

    Raises
    ------
        GeomKitInputError: If ``count`` < n+3 (no smaller set can be in spherical general position)

    """
    if count < n + 3:
        raise GeomKitInputError(
            f"spherical general position needs at least n+3 = {n + 3} points, got {count}"
        )
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        points = PointSet.from_points(random_finite_points(n, count, rng), n, tol)
        if spherical_general_position(points, tol).verdict:
            return points
    raise GeomKitInputError(f"no {count}-point set in spherical general position after {attempts} draws")
