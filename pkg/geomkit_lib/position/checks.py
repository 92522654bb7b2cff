"""
Circular and spherical general position.

A set B is in circular (spherical) general position when every circle ((n-1)-sphere)
misses at least two points of B. For finite B this is decided exactly by a leave-one-out
reduction: B fails iff some B' ⊆ B with |B'| >= |B| - 1 lies on a sphere of the target
dimension, i.e. iff B or one of the sets B \\ {b} spans a sphere of dimension at most the
target. That is |B| + 1 span computations; ``brute_force_gp_oracle`` applies the
definition directly for cross-checking.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_settings, get_task_runner, get_tolerances
from geomkit_lib.any.exceptions import GeomKitTooLargeError
from geomkit_lib.any.types import PositionMode
from geomkit_lib.any.utils import OrderedTaskRunner
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, SpherePoint, lift, stack
from geomkit_lib.geometry.spheres import KSphere, contains, sphere_from_subspace, span
from geomkit_lib.position.point_sets import PointSet

LOGGER = psnap_get_logger("geomkit_lib.position.checks")

SAMPLED_SET_NOTE = "verdict certifies the given finite point set only"


@dataclass(frozen=True, eq=False)
class GPWitness:
    """A sphere of the target dimension and the indices of the (at most one) points it misses."""

    sphere: KSphere
    excluded: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GPReport:
    """
    Outcome of a general-position check.

    ``rank_gap`` is the smallest relative singular value among the spans that were found
    to exceed the target dimension (1.0 when none was computed); values close to εrank
    mean the verdict sits near the tolerance threshold.
    """

    mode: PositionMode
    n: int
    size: int
    verdict: bool
    cardinality_ok: bool
    witness: GPWitness | None
    rank_gap: float = 1.0
    note: str = SAMPLED_SET_NOTE

    def __post_init__(self) -> None:
        if not self.verdict and self.witness is None:
            raise ValueError("a failing general-position report needs a witness")


def minimum_size(mode: PositionMode, n: int) -> int:
    """Smallest set that can be in general position: 5 for circles, n+3 for (n-1)-spheres."""
    return mode.target_dim(n) + 4


def witness_sphere(rays: list[SpherePoint], target: int, n: int, tol: Tolerances | None = None) -> KSphere:
    """
    A target-dimensional sphere through ``rays`` (which must span at most that dimension).

    Missing dimensions are filled greedily from the lifts of 0, ∞ and the unit vectors,
    taking the candidate farthest from the current subspace each time, so the result is
    deterministic.
    """
    tol = tol if tol is not None else get_tolerances()
    candidates = [lift(ExtendedPoint.finite(np.zeros(n)), n), lift(ExtendedPoint.infinity(), n)]
    candidates += [lift(ExtendedPoint.finite(np.eye(n)[i]), n) for i in range(n)]
    if rays:
        u, s, _ = np.linalg.svd(stack(rays), full_matrices=False)
        basis = u[:, : int(np.count_nonzero(s > tol.rank * s[0]))]
    else:
        basis = np.zeros((n + 2, 0))
    while basis.shape[1] < target + 2:
        residual = [np.linalg.norm(c.vector - basis @ (basis.T @ c.vector)) for c in candidates]
        best = candidates[int(np.argmax(residual))].vector
        extra = best - basis @ (basis.T @ best)
        basis = np.column_stack([basis, extra / np.linalg.norm(extra)])
    return sphere_from_subspace(basis, tol)


def _excluded(points: PointSet, sphere: KSphere, tol: Tolerances) -> tuple[int, ...]:
    return tuple(i for i, p in enumerate(points) if not contains(sphere, p, tol))


def _failure(
    points: PointSet, mode: PositionMode, members: list[SpherePoint], tol: Tolerances, rank_gap: float = 1.0
) -> GPReport:
    sphere = witness_sphere(members, mode.target_dim(points.n), points.n, tol)
    return GPReport(
        mode=mode,
        n=points.n,
        size=len(points),
        verdict=False,
        cardinality_ok=len(points) >= minimum_size(mode, points.n),
        witness=GPWitness(sphere=sphere, excluded=_excluded(points, sphere, tol)),
        rank_gap=rank_gap,
    )


def _leave_one_out(
    points: PointSet, mode: PositionMode, tol: Tolerances | None, runner: OrderedTaskRunner | None
) -> GPReport:
    tol = tol if tol is not None else get_tolerances()
    runner = runner if runner is not None else get_task_runner()
    target = mode.target_dim(points.n)
    rays = list(points.points)

    if len(rays) < minimum_size(mode, points.n):
        LOGGER.debug(f"{mode.value} GP fails on cardinality: {len(rays)} points")
        return _failure(points, mode, rays[:-1] if len(rays) > target + 2 else rays, tol)

    subsets = [rays] + [rays[:i] + rays[i + 1 :] for i in range(len(rays))]
    spheres = runner.map(lambda subset: span(subset, tol), subsets)
    gaps = [s.rank_gap for s in spheres if s.k > target]
    rank_gap = min(gaps, default=1.0)
    for subset, sphere in zip(subsets, spheres, strict=True):
        if sphere.k <= target:
            LOGGER.debug(f"{mode.value} GP fails: {len(subset)} points lie on a {sphere.k}-sphere")
            return _failure(points, mode, subset, tol, rank_gap)

    if rank_gap <= tol.ambiguous_ceiling * 10:
        LOGGER.warning(f"{mode.value} GP holds but the closest span has relative gap {rank_gap:.2e}")
    return GPReport(
        mode=mode,
        n=points.n,
        size=len(points),
        verdict=True,
        cardinality_ok=True,
        witness=None,
        rank_gap=rank_gap,
    )


def circular_general_position(
    points: PointSet, tol: Tolerances | None = None, runner: OrderedTaskRunner | None = None
) -> GPReport:
    """
    Decide whether every circle misses at least two points of ``points``.

    Example:
    -------
        ```python
        square = PointSet.from_points([finite(1, 0), finite(0, 1), finite(-1, 0), finite(0, -1), finite(0, 0)], n=2)
        report = circular_general_position(square)
        assert not report.verdict   # four of the points are concircular
        ```

    """
    return _leave_one_out(points, PositionMode.CIRCULAR, tol, runner)


def spherical_general_position(
    points: PointSet, tol: Tolerances | None = None, runner: OrderedTaskRunner | None = None
) -> GPReport:
    """Decide whether every (n-1)-sphere misses at least two points; needs at least n+3 points."""
    return _leave_one_out(points, PositionMode.SPHERICAL, tol, runner)


def check_general_position(
    points: PointSet, mode: PositionMode, tol: Tolerances | None = None, runner: OrderedTaskRunner | None = None
) -> GPReport:
    return _leave_one_out(points, mode, tol, runner)


def brute_force_gp_oracle(
    points: PointSet, mode: PositionMode, tol: Tolerances | None = None, limit: int | None = None
) -> GPReport:
    """
    Apply the definition directly.

    Every sphere of dimension at most the target that holds two or more points of B is the
    span of at most target+2 of them, so enumerating those subsets, counting incidences
    and failing when some sphere holds |B| - 1 points decides general position.

    Raises
    ------
        GeomKitTooLargeError: If |B| exceeds the cost guard (``brute_force_limit``)

    """
    tol = tol if tol is not None else get_tolerances()
    limit = limit if limit is not None else get_settings().brute_force_limit
    if len(points) > limit:
        raise GeomKitTooLargeError(f"brute-force oracle accepts at most {limit} points, got {len(points)}")
    target = mode.target_dim(points.n)
    rays = list(points.points)
    if len(rays) <= 1:
        return _failure(points, mode, rays, tol)

    for size in range(2, min(target + 2, len(rays)) + 1):
        for subset in combinations(range(len(rays)), size):
            sphere = span([rays[i] for i in subset], tol)
            if sphere.k > target:
                continue
            incident = [p for p in rays if contains(sphere, p, tol)]
            if len(incident) >= len(rays) - 1:
                return _failure(points, mode, incident, tol)

    return GPReport(
        mode=mode,
        n=points.n,
        size=len(points),
        verdict=True,
        cardinality_ok=len(points) >= minimum_size(mode, points.n),
        witness=None,
    )
