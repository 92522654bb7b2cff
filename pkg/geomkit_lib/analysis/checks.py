"""
Weak circle / sphere preservation checks.

"For every circle C, T(C) lies in some circle" is certified over a finite family: each
sphere is sampled, the samples are pushed through the oracle, and the dimension of the
span of the images is compared with the target. Spheres are processed independently
(on the task runner) and aggregated by index.
"""

from collections.abc import Sequence

import numpy as np
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_settings, get_task_runner, get_tolerances
from geomkit_lib.any.exceptions import GeomKitInputError, GeomKitNoDataError
from geomkit_lib.any.protocols import MapOracle
from geomkit_lib.any.types import CheckMode
from geomkit_lib.any.utils import OrderedTaskRunner, colex_combinations
from geomkit_lib.analysis.oracles import MapTable
from geomkit_lib.analysis.reports import SINGLE_POINT_DIM, SphereOutcome, WcpReport
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, SpherePoint, distinct_points, lift, project
from geomkit_lib.geometry.spheres import KSphere, incident_indices, random_sphere, sample_sphere, span

LOGGER = psnap_get_logger("geomkit_lib.analysis.checks")


def image_dimension(images: Sequence[SpherePoint], tol: Tolerances | None = None) -> int:
    """Dimension of the span of ``images``; ``SINGLE_POINT_DIM`` when they are all one point."""
    distinct, _ = distinct_points(images, tol)
    if len(distinct) < 2:
        return SINGLE_POINT_DIM
    return span(distinct, tol).k


def _outcome(
    index: int, sphere: KSphere, domain: Sequence[ExtendedPoint], oracle: MapOracle, tol: Tolerances
) -> SphereOutcome | None:
    try:
        images = [oracle.query(p) for p in domain]
    except GeomKitNoDataError as e:
        LOGGER.debug(f"sphere {index} skipped: {e}")
        return None
    dim = image_dimension([lift(y, oracle.n) for y in images], tol)
    return SphereOutcome(
        index=index, sphere=sphere, image_dim=dim, domain_points=tuple(domain), image_points=tuple(images)
    )


def _aggregate(
    outcomes: Sequence[SphereOutcome | None], n: int, target: int, seed: int, scope: str
) -> WcpReport:
    failures = tuple(o for o in outcomes if o is not None and o.image_dim > target)
    tested = sum(1 for o in outcomes if o is not None)
    report = WcpReport(
        n=n,
        target_dim=target,
        spheres_tested=tested,
        spheres_skipped=len(outcomes) - tested,
        verdict=not failures,
        failures=failures,
        image_dims=tuple(None if o is None else o.image_dim for o in outcomes),
        seed=seed,
        scope=scope,
    )
    LOGGER.info(
        f"{target}-sphere preservation: {'pass' if report.verdict else 'FAIL'} "
        f"({tested} tested, {report.spheres_skipped} skipped, {len(failures)} failing)"
    )
    return report


def check_preservation(
    oracle: MapOracle,
    spheres: Sequence[KSphere],
    target_dim: int,
    samples: int,
    seed: int = 0,
    tol: Tolerances | None = None,
    runner: OrderedTaskRunner | None = None,
) -> WcpReport:
    """
    Sample every sphere, map the samples and require an image span of dimension <= ``target_dim``.

    Sphere ``i`` is sampled with seed ``seed + i``, so reports are reproducible.
    """
    tol = tol if tol is not None else get_tolerances()
    runner = runner if runner is not None else get_task_runner()
    for i, s in enumerate(spheres):
        if s.n != oracle.n:
            raise GeomKitInputError(f"sphere {i} lives in S^{s.n} but the oracle maps S^{oracle.n}")

    def run(item: tuple[int, KSphere]) -> SphereOutcome | None:
        i, sphere = item
        domain = [project(v, tol) for v in sample_sphere(sphere, samples, seed + i, tol)]
        return _outcome(i, sphere, domain, oracle, tol)

    outcomes = runner.map(run, list(enumerate(spheres)))
    return _aggregate(outcomes, oracle.n, target_dim, seed, f"{len(spheres)} sampled spheres, {samples} points each")


def check_weakly_circle_preserving(
    oracle: MapOracle,
    circles: Sequence[KSphere],
    samples_per_circle: int | None = None,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> WcpReport:
    """
    Check that the image of every given circle lies in a circle.

    Any three image points are concircular, so at least 4 samples per circle are needed.

    Raises
    ------
        GeomKitInputError: If a sphere is not a circle or ``samples_per_circle`` < 4

    """
    samples = samples_per_circle if samples_per_circle is not None else get_settings().samples_per_circle
    if samples < 4:
        raise GeomKitInputError(f"samples_per_circle must be >= 4, got {samples}")
    for i, c in enumerate(circles):
        if c.k != 1:
            raise GeomKitInputError(f"sphere {i} has dimension {c.k}, expected a circle")
    return check_preservation(oracle, circles, 1, samples, seed, tol)


def check_weakly_sphere_preserving(
    oracle: MapOracle,
    spheres: Sequence[KSphere],
    samples_per_sphere: int | None = None,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> WcpReport:
    """Check that the image of every given (n-1)-sphere lies in an (n-1)-sphere (needs n+2 samples or more)."""
    n = oracle.n
    samples = samples_per_sphere if samples_per_sphere is not None else n + 3
    if samples < n + 2:
        raise GeomKitInputError(f"samples_per_sphere must be >= n+2 = {n + 2}, got {samples}")
    for i, s in enumerate(spheres):
        if s.k != n - 1:
            raise GeomKitInputError(f"sphere {i} has dimension {s.k}, expected {n - 1}")
    return check_preservation(oracle, spheres, n - 1, samples, seed, tol)


def check_k_sphere_collapse(
    oracle: MapOracle, k: int, trials: int, seed: int = 0, tol: Tolerances | None = None
) -> WcpReport:
    """
    Check that random k-spheres map into k-spheres.

    Each of the ``trials`` spheres is a random k-sphere (drawn from ``seed``) sampled at
    max(samples_per_circle, k+4) points.
    """
    n = oracle.n
    if not 1 <= k <= n - 1:
        raise GeomKitInputError(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    rng = np.random.default_rng(seed)
    spheres = [random_sphere(n, k, rng, tol) for _ in range(trials)]
    samples = max(get_settings().samples_per_circle, k + 4)
    return check_preservation(oracle, spheres, k, samples, seed, tol)


def random_circles(n: int, count: int, seed: int, tol: Tolerances | None = None) -> list[KSphere]:
    rng = np.random.default_rng(seed)
    return [random_sphere(n, 1, rng, tol) for _ in range(count)]


def random_hyperspheres(n: int, count: int, seed: int, tol: Tolerances | None = None) -> list[KSphere]:
    rng = np.random.default_rng(seed)
    return [random_sphere(n, n - 1, rng, tol) for _ in range(count)]


def table_spheres(
    table: MapTable, k: int, min_points: int, limit: int, tol: Tolerances | None = None
) -> list[tuple[KSphere, tuple[int, ...]]]:
    """
    k-spheres carried by the table: spans of (k+2)-subsets of domain points holding at least
    ``min_points`` table points, in colexicographic order of their first spanning subset.

    At most ``limit`` spheres are returned and at most ``witness_search_cap`` subsets are examined.
    """
    tol = tol if tol is not None else get_tolerances()
    rays = list(table.domain_rays)
    cap = get_settings().witness_search_cap
    seen: list[frozenset[int]] = []
    found: list[tuple[KSphere, tuple[int, ...]]] = []
    for examined, subset in enumerate(colex_combinations(len(rays), k + 2)):
        if examined >= cap:
            LOGGER.warning(f"table sphere search stopped after {cap} subsets")
            break
        if any(members.issuperset(subset) for members in seen):
            continue
        sphere = span([rays[i] for i in subset], tol)
        if sphere.k != k:
            continue
        members = tuple(incident_indices(sphere, rays, tol))
        if len(members) <= k + 2:
            continue
        seen.append(frozenset(members))
        if len(members) >= min_points:
            found.append((sphere, members))
            if len(found) >= limit:
                break
    return found


def check_table(
    table: MapTable,
    mode: CheckMode,
    max_spheres: int,
    min_samples: int | None = None,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> WcpReport:
    """
    Preservation check using only the table's own samples.

    Tables answer no off-table queries, so the tested circles (or (n-1)-spheres) are the
    ones that pass through at least ``min_samples`` domain points.

    Raises
    ------
        GeomKitInputError: If the table carries no testable sphere

    """
    tol = tol if tol is not None else get_tolerances()
    n = table.n
    target = 1 if mode is CheckMode.WCP else n - 1
    floor = 4 if mode is CheckMode.WCP else n + 2
    samples = min_samples if min_samples is not None else floor
    if samples < floor:
        raise GeomKitInputError(f"at least {floor} samples per sphere are needed, got {samples}")
    found = table_spheres(table, target, samples, max_spheres, tol)
    if not found:
        raise GeomKitInputError(
            f"table has no {target}-sphere through {samples} or more domain points; nothing to test"
        )
    outcomes = [
        SphereOutcome(
            index=i,
            sphere=sphere,
            image_dim=image_dimension([table.image_rays[j] for j in members], tol),
            domain_points=tuple(table.pairs[j][0] for j in members),
            image_points=tuple(table.pairs[j][1] for j in members),
        )
        for i, (sphere, members) in enumerate(found)
    ]
    return _aggregate(outcomes, n, target, seed, f"{len(found)} spheres through table points")
