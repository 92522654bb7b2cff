"""
Recovering a Möbius map from a sample table.

A map T of S^n whose image is in spherical general position and that carries some
2-sphere onto a set in circular general position is Möbius, provided it is weakly circle
preserving. ``verify_hypotheses`` checks the two data hypotheses on a table and
``recover_moebius`` produces the map, either by fitting once on a spread subset
(``direct``) or by fitting on the witness 2-sphere and growing a nested chain of spheres
up to S^n (``chain``). Every returned map is verified against all table pairs.
"""

from collections.abc import Iterator, Sequence

import numpy as np
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_settings, get_tolerances
from geomkit_lib.any.exceptions import GeomKitInconsistentError, GeomKitInputError, GeomKitInsufficientDataError
from geomkit_lib.any.protocols import MapOracle
from geomkit_lib.any.types import PositionMode, RecoveryStrategy
from geomkit_lib.any.utils import colex_combinations
from geomkit_lib.analysis.checks import (
    check_k_sphere_collapse,
    check_weakly_sphere_preserving,
    image_dimension,
    random_hyperspheres,
)
from geomkit_lib.analysis.oracles import MapTable
from geomkit_lib.analysis.reports import (
    CHAIN_HYPOTHESIS,
    DIRECT_SUBSET_HYPOTHESIS,
    DOMAIN_S2_HYPOTHESIS,
    FIVE_POINT_HYPOTHESIS,
    S2_WITNESS_HYPOTHESIS,
    SPHERICAL_GP_HYPOTHESIS,
    HypothesesNotSatisfied,
    HypothesesReport,
    Inconsistent,
    Recovered,
    RecoveryResult,
    S2Witness,
    WspReductionReport,
)
from geomkit_lib.config.schemas import AnalysisSettings, Tolerances
from geomkit_lib.geometry.points import SpherePoint, distinct_points, lift, point_distance, stack
from geomkit_lib.geometry.spheres import (
    KSphere,
    incident_indices,
    membership_residual,
    random_finite_points,
    span,
    sphere_from_subspace,
)
from geomkit_lib.moebius.fitting import (
    Correspondence,
    RestrictedFit,
    extend_to_ambient,
    fit_between_spheres,
    fit_from_correspondences,
    residuals,
)
from geomkit_lib.moebius.maps import MoebiusMap
from geomkit_lib.position.checks import circular_general_position, spherical_general_position
from geomkit_lib.position.point_sets import PointSet

LOGGER = psnap_get_logger("geomkit_lib.analysis.recovery")


# ----------------------------------------------------------------------------
# Hypotheses
# ----------------------------------------------------------------------------


def _anchors(count: int, cap: int, seed: int) -> Iterator[tuple[tuple[int, int, int], bool]]:
    """Colexicographic triples up to ``cap``, then ``cap`` random triples; flags the random phase."""
    for examined, triple in enumerate(colex_combinations(count, 3)):
        if examined >= cap:
            break
        yield (triple[0], triple[1], triple[2]), False
    else:
        return
    rng = np.random.default_rng(seed)
    for _ in range(cap):
        a, b, c = sorted(int(i) for i in rng.choice(count, size=3, replace=False))
        yield (a, b, c), True


def _two_spheres_through(
    anchor: tuple[int, int, int], vectors: np.ndarray, tol: Tolerances
) -> list[tuple[int, ...]]:
    """
    Member sets of the 2-spheres through the anchor circle holding at least two more points.

    Points off the anchor circle are grouped by the direction of their residual against the
    circle's subspace: two points lie on a common 2-sphere with the circle exactly when
    their residuals are parallel.
    """
    q, _ = np.linalg.qr(vectors[:, list(anchor)])
    residual = vectors - q @ (q.T @ vectors)
    norms = np.linalg.norm(residual, axis=0)
    on_circle = [i for i in range(vectors.shape[1]) if norms[i] <= tol.member]
    off = [i for i in range(vectors.shape[1]) if norms[i] > tol.member]

    groups: list[tuple[int, ...]] = []
    assigned: set[int] = set()
    for pos, i in enumerate(off):
        if i in assigned:
            continue
        d = residual[:, i] / norms[i]
        rest = np.array(off[pos + 1 :], dtype=int)
        if rest.size == 0:
            continue
        r = residual[:, rest]
        perp = np.linalg.norm(r - np.outer(d, d @ r), axis=0)
        mates = [int(j) for j in rest[perp <= tol.member] if int(j) not in assigned]
        if not mates:
            continue
        assigned.update([i, *mates])
        groups.append(tuple(sorted([*on_circle, i, *mates])))
    return groups


def find_s2_witness(
    table: MapTable, tol: Tolerances | None = None, settings: AnalysisSettings | None = None, seed: int | None = None
) -> tuple[S2Witness | None, int, int, bool]:
    """
    Search for a 2-sphere whose table images are in circular general position.

    Returns
    -------
        (witness or None, anchors examined, candidate spheres tested, whether the cap was hit)

    """
    tol = tol if tol is not None else get_tolerances()
    settings = settings if settings is not None else get_settings()
    seed = seed if seed is not None else settings.seed
    if table.n < 2 or len(table) < 5:
        return None, 0, 0, False

    vectors = stack(list(table.domain_rays))
    tested: set[tuple[int, ...]] = set()
    examined = 0
    cap_hit = False
    for anchor, random_phase in _anchors(len(table), settings.witness_search_cap, seed):
        examined += 1
        if random_phase and not cap_hit:
            cap_hit = True
            LOGGER.warning(f"2-sphere witness search hit the cap of {settings.witness_search_cap} anchors")
        for members in _two_spheres_through(anchor, vectors, tol):
            if members in tested:
                continue
            tested.add(members)
            sphere = span([table.domain_rays[i] for i in members], tol)
            if sphere.k != 2:
                continue
            images = PointSet.from_rays([table.image_rays[i] for i in members], table.n, tol)
            report = circular_general_position(images, tol)
            if report.verdict:
                LOGGER.debug(f"2-sphere witness with {len(members)} points after {examined} anchors")
                return S2Witness(sphere=sphere, indices=members, image_gp=report), examined, len(tested), cap_hit
    return None, examined, len(tested), cap_hit


def verify_hypotheses(
    table: MapTable, tol: Tolerances | None = None, settings: AnalysisSettings | None = None, seed: int | None = None
) -> HypothesesReport:
    """
    Check (a) spherical general position of the deduplicated images and (b) the existence
    of a domain 2-sphere whose images are in circular general position.

    The 2-sphere search is skipped when (a) already fails.
    """
    tol = tol if tol is not None else get_tolerances()
    images = PointSet.from_rays(list(table.image_rays), table.n, tol)
    gp = spherical_general_position(images, tol)
    if not gp.verdict:
        LOGGER.info(f"hypotheses fail: {len(images)} distinct images are not in spherical general position")
        return HypothesesReport(spherical_gp=gp, witness=None, anchors_examined=0, candidates_tested=0, cap_hit=False)
    witness, examined, tested, cap_hit = find_s2_witness(table, tol, settings, seed)
    report = HypothesesReport(
        spherical_gp=gp, witness=witness, anchors_examined=examined, candidates_tested=tested, cap_hit=cap_hit
    )
    LOGGER.info(f"hypotheses {'hold' if report.passed else 'fail'} ({examined} anchors, {tested} candidate 2-spheres)")
    return report


def _not_satisfied(report: HypothesesReport) -> HypothesesNotSatisfied:
    if not report.spherical_gp.verdict:
        witness = report.spherical_gp.witness
        return HypothesesNotSatisfied(
            hypothesis=SPHERICAL_GP_HYPOTHESIS,
            reason=f"the {report.spherical_gp.size} distinct images lie, up to one point, on an "
            f"({report.spherical_gp.n - 1})-sphere",
            witness=witness.sphere if witness is not None else None,
            report=report,
        )
    return HypothesesNotSatisfied(
        hypothesis=S2_WITNESS_HYPOTHESIS,
        reason=f"no domain 2-sphere with images in circular general position among "
        f"{report.candidates_tested} candidates",
        report=report,
    )


# ----------------------------------------------------------------------------
# Recovery
# ----------------------------------------------------------------------------


def _table_residuals(m: MoebiusMap, table: MapTable) -> list[float]:
    return residuals(m, [Correspondence(x, y) for x, y in table.pairs])


def _verified(
    m: MoebiusMap,
    table: MapTable,
    tol: Tolerances,
    strategy: str,
    pairs_used: tuple[int, ...],
    chain: tuple[int, ...] = (),
) -> RecoveryResult:
    res = _table_residuals(m, table)
    worst = int(np.argmax(res))
    if res[worst] > tol.verify:
        return Inconsistent(
            witness_index=worst,
            residual=res[worst],
            reason=f"fitted map misses pair {worst} by {res[worst]:.3e}",
        )
    return Recovered(moebius=m, max_residual=res[worst], strategy=strategy, pairs_used=pairs_used, chain=chain)


def spread_subset(rays: Sequence[SpherePoint], size: int, exclude: set[int] | None = None) -> list[int]:
    """
    Greedy farthest-point subset: start from the point farthest from the mean ray, then add
    the point whose distance to the chosen ones is largest.
    """
    available = [i for i in range(len(rays)) if not exclude or i not in exclude]
    if len(available) < size:
        return []
    mean = np.mean([rays[i].vector for i in available], axis=0)
    first = max(available, key=lambda i: float(np.linalg.norm(rays[i].vector - mean)))
    chosen = [first]
    while len(chosen) < size:
        best = max(
            (i for i in available if i not in chosen),
            key=lambda i: min(point_distance(rays[i], rays[j]) for j in chosen),
        )
        chosen.append(best)
    return chosen


def _recover_direct(
    table: MapTable, tol: Tolerances, settings: AnalysisSettings, report: HypothesesReport
) -> RecoveryResult:
    n = table.n
    used: set[int] = set()
    best: tuple[int, MoebiusMap, list[int]] | None = None
    failure: GeomKitInconsistentError | None = None
    for attempt in range(settings.fit_attempts):
        subset = spread_subset(table.domain_rays, n + 3, used)
        if not subset:
            break
        used.update(subset)
        pairs = [Correspondence(*table.pairs[i]) for i in subset]
        try:
            m = fit_from_correspondences(pairs, tol, n=n)
        except GeomKitInsufficientDataError as e:
            LOGGER.debug(f"direct attempt {attempt}: {e}")
            continue
        except GeomKitInconsistentError as e:
            LOGGER.debug(f"direct attempt {attempt}: {e}")
            if failure is None and e.witness_index is not None:
                failure = GeomKitInconsistentError(str(e), subset[e.witness_index], e.residual)
            continue
        inliers = sum(1 for r in _table_residuals(m, table) if r <= tol.verify)
        LOGGER.debug(f"direct attempt {attempt}: {inliers}/{len(table)} inliers")
        if best is None or inliers > best[0]:
            best = (inliers, m, subset)
        if inliers == len(table):
            break

    if best is None:
        if failure is not None:
            return Inconsistent(witness_index=failure.witness_index, residual=failure.residual, reason=str(failure))
        return HypothesesNotSatisfied(
            hypothesis=DIRECT_SUBSET_HYPOTHESIS,
            reason=f"no well-conditioned {n + 3}-subset found in {settings.fit_attempts} attempts; "
            f"try the chain strategy",
            report=report,
        )
    _, m, subset = best
    return _verified(m, table, tol, strategy=RecoveryStrategy.DIRECT.value, pairs_used=tuple(subset))


def _fit_on(table: MapTable, members: Sequence[int], domain: KSphere, tol: Tolerances) -> RestrictedFit:
    try:
        return fit_between_spheres(
            [table.domain_rays[i] for i in members], [table.image_rays[i] for i in members], domain, None, tol
        )
    except GeomKitInconsistentError as e:
        index = members[e.witness_index] if e.witness_index is not None else None
        raise GeomKitInconsistentError(str(e), index, e.residual) from e


def _new_images(table: MapTable, members: Sequence[int], base: Sequence[int], tol: Tolerances) -> int:
    old = [table.image_rays[i] for i in base]
    fresh = [table.image_rays[i] for i in members if i not in set(base)]
    fresh = [w for w in fresh if all(point_distance(w, o) > tol.member for o in old)]
    return len(distinct_points(fresh, tol)[0])


def _recover_chain(table: MapTable, witness: S2Witness, tol: Tolerances) -> RecoveryResult:
    n = table.n
    rays = list(table.domain_rays)
    sphere = witness.sphere
    members = incident_indices(sphere, rays, tol)
    try:
        fit = _fit_on(table, members, sphere, tol)
    except GeomKitInconsistentError as e:
        return Inconsistent(witness_index=e.witness_index, residual=e.residual, reason=str(e))
    chain = [sphere.k]

    while sphere.k < n:
        best: tuple[float, KSphere, list[int]] | None = None
        seen: list[frozenset[int]] = []
        for x in range(len(rays)):
            if x in members or any(x in s for s in seen):
                continue
            candidate = sphere_from_subspace(np.column_stack([sphere.basis, rays[x].vector]), tol)
            on = incident_indices(candidate, rays, tol)
            seen.append(frozenset(on))
            if _new_images(table, on, members, tol) < 2:
                continue
            score = membership_residual(fit.image, table.image_rays[x])
            if best is None or score > best[0]:
                best = (score, candidate, on)
        if best is None:
            return HypothesesNotSatisfied(
                hypothesis=CHAIN_HYPOTHESIS,
                reason=f"every {sphere.k + 1}-sphere through the current {sphere.k}-sphere adds at most one "
                f"new image point",
                witness=sphere,
            )
        _, sphere, members = best
        try:
            fit = _fit_on(table, members, sphere, tol)
        except GeomKitInconsistentError as e:
            return Inconsistent(witness_index=e.witness_index, residual=e.residual, reason=str(e))
        chain.append(sphere.k)
        LOGGER.debug(f"chain extended to a {sphere.k}-sphere with {len(members)} pairs")

    return _verified(
        extend_to_ambient(fit), table, tol, strategy=RecoveryStrategy.CHAIN.value, pairs_used=tuple(members),
        chain=tuple(chain),
    )


def recover_moebius(
    table: MapTable,
    strategy: RecoveryStrategy = RecoveryStrategy.DIRECT,
    tol: Tolerances | None = None,
    settings: AnalysisSettings | None = None,
    seed: int | None = None,
) -> RecoveryResult:
    """
    Recover the Möbius map behind ``table``.

    Both strategies first run ``verify_hypotheses``; a failing hypothesis is returned as
    ``HypothesesNotSatisfied`` naming it. So is a ``direct`` run in which no spread subset
    of n+3 pairs gives a well-conditioned fit.

    Example:
    -------
        ```python
        table = make_table(MoebiusOracle(m), sample_chain_domain(3, 40, seed=1), 3)
        result = recover_moebius(table, RecoveryStrategy.CHAIN)
        assert isinstance(result, Recovered)
        ```

    Raises
    ------
        GeomKitInputError: If the table is empty

    """
    tol = tol if tol is not None else get_tolerances()
    settings = settings if settings is not None else get_settings()
    if len(table) == 0:
        raise GeomKitInputError("cannot recover a map from an empty table")

    report = verify_hypotheses(table, tol, settings, seed)
    if not report.passed:
        return _not_satisfied(report)
    assert report.witness is not None

    if strategy is RecoveryStrategy.DIRECT:
        result = _recover_direct(table, tol, settings, report)
    else:
        result = _recover_chain(table, report.witness, tol)
    LOGGER.info(f"{strategy.value} recovery on {len(table)} pairs: {type(result).__name__}")
    return result


def five_point_recover_s2(
    table: MapTable, tol: Tolerances | None = None, min_distinct_images: int = 5
) -> RecoveryResult:
    """
    Recover a map of a 2-sphere from samples whose images are in circular general position.

    The domain points must lie on one 2-sphere; the fitted map of that 2-sphere onto the
    span of the images is extended to a Möbius map of S^n. ``min_distinct_images=6``
    gives the older six-point form of the statement.
    """
    tol = tol if tol is not None else get_tolerances()
    if len(table) == 0:
        raise GeomKitInputError("cannot recover a map from an empty table")
    domain_points = PointSet.from_rays(list(table.domain_rays), table.n, tol)
    domain = span(list(domain_points.points), tol) if len(domain_points) >= 2 else None
    if domain is None or domain.k != 2:
        return HypothesesNotSatisfied(
            hypothesis=DOMAIN_S2_HYPOTHESIS,
            reason=f"domain points span a {'point' if domain is None else f'{domain.k}-sphere'}, not a 2-sphere",
            witness=domain,
        )

    images = PointSet.from_rays(list(table.image_rays), table.n, tol)
    if len(images) < min_distinct_images:
        return HypothesesNotSatisfied(
            hypothesis=FIVE_POINT_HYPOTHESIS,
            reason=f"only {len(images)} distinct images, at least {min_distinct_images} needed",
        )
    gp = circular_general_position(images, tol)
    if not gp.verdict:
        assert gp.witness is not None
        return HypothesesNotSatisfied(
            hypothesis=PositionMode.CIRCULAR.value + " general position of the images",
            reason=f"a circle holds all but {len(gp.witness.excluded)} of the {len(images)} images",
            witness=gp.witness.sphere,
        )

    members = list(range(len(table)))
    try:
        fit = _fit_on(table, members, domain, tol)
    except GeomKitInconsistentError as e:
        return Inconsistent(witness_index=e.witness_index, residual=e.residual, reason=str(e))
    result = _verified(extend_to_ambient(fit), table, tol, strategy="five-point", pairs_used=tuple(members))
    if isinstance(result, Recovered):
        return Recovered(
            moebius=result.moebius,
            max_residual=fit.max_residual,
            strategy=result.strategy,
            pairs_used=result.pairs_used,
            restricted=fit,
        )
    return result


def verify_wsp_reduction(
    oracle: MapOracle,
    spheres: int = 20,
    trials: int = 20,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> WspReductionReport:
    """
    Check that a weakly sphere-preserving oracle with a full-dimensional image also maps
    k-spheres into k-spheres for every 1 <= k <= n-1.

    The image dimension is measured on the images of 2(n+2) random points drawn from ``seed``.
    """
    tol = tol if tol is not None else get_tolerances()
    n = oracle.n
    wsp = check_weakly_sphere_preserving(oracle, random_hyperspheres(n, spheres, seed, tol), seed=seed, tol=tol)
    rng = np.random.default_rng(seed)
    samples = random_finite_points(n, 2 * (n + 2), rng)
    image_dim = image_dimension([lift(oracle.query(p), n) for p in samples], tol)
    collapse = tuple(check_k_sphere_collapse(oracle, k, trials, seed + k, tol) for k in range(1, n))
    report = WspReductionReport(wsp=wsp, image_dim=image_dim, collapse=collapse)
    LOGGER.info(f"WSP reduction: applies={report.applies}, holds={report.holds} (image dim {image_dim})")
    return report
