"""
Fitting Möbius maps to point correspondences.

Each pair (v_i, w_i) of null rays gives the linear equations G v_i = λ_i w_i in the
entries of G and one unknown scale per pair. The stacked homogeneous system is solved
through its SVD (last right singular vector, as in a direct linear transform), then the
solution is scaled and pushed to the nearest Lorentz-orthogonal matrix with a form-aware
polar step and verified against every pair.

The same solver works inside a k-sphere: sources and targets are expressed in orthonormal
bases of their Lorentz subspaces and the Lorentz form is replaced by its restriction.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from partsnap_logger.logging import psnap_get_logger
from scipy.linalg import cholesky, null_space, sqrtm

from geomkit_lib.any.container import get_tolerances
from geomkit_lib.any.exceptions import (
    GeomKitInconsistentError,
    GeomKitInputError,
    GeomKitInsufficientDataError,
)
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint, FloatArray, SpherePoint, lift, lorentz_metric, point_distance
from geomkit_lib.geometry.spheres import KSphere, span
from geomkit_lib.moebius.maps import MoebiusMap

LOGGER = psnap_get_logger("geomkit_lib.moebius.fitting")


@dataclass(frozen=True)
class Correspondence:
    """A sample pair: ``source`` is mapped to ``target``."""

    source: ExtendedPoint
    target: ExtendedPoint


@dataclass(frozen=True, eq=False)
class RestrictedFit:
    """
    A Möbius map between two k-spheres in intrinsic coordinates.

    ``matrix`` maps coordinates in ``domain.basis`` to coordinates in ``image.basis`` and
    preserves the restricted Lorentz forms. ``residuals`` are the fitted pairs' point
    distances in input order.
    """

    domain: KSphere
    image: KSphere
    matrix: FloatArray
    residuals: tuple[float, ...]
    projection_shift: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def ambient_vector(self, v: SpherePoint) -> FloatArray:
        """Image of ``v`` (assumed on the domain sphere) as an unnormalized vector."""
        return self.image.basis @ (self.matrix @ (self.domain.basis.T @ v.vector))


def _ray_residual(u: FloatArray, w: SpherePoint) -> float:
    """Distance between the ray of ``u`` and the canonical ray ``w``, ignoring sign."""
    norm = float(np.linalg.norm(u))
    if norm == 0.0 or not np.isfinite(norm):
        return float("inf")
    a = u / norm
    b = w.vector / np.linalg.norm(w.vector)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


def residuals(m: MoebiusMap, pairs: Sequence[Correspondence]) -> list[float]:
    """Point distance between apply(m, source) and target for every pair."""
    return [_ray_residual(m.matrix @ lift(c.source, m.n).vector, lift(c.target, m.n)) for c in pairs]


def max_residual(m: MoebiusMap, pairs: Sequence[Correspondence]) -> float:
    return max(residuals(m, pairs), default=0.0)


def _deduplicate(
    sources: Sequence[SpherePoint], targets: Sequence[SpherePoint], tol: Tolerances
) -> tuple[list[SpherePoint], list[SpherePoint], list[int]]:
    """
    Drop repeated pairs and reject data no injective map can produce.

    Returns the kept sources, targets and their original indices.
    """
    kept_src: list[SpherePoint] = []
    kept_dst: list[SpherePoint] = []
    kept_idx: list[int] = []
    for i, (v, w) in enumerate(zip(sources, targets, strict=True)):
        duplicate = False
        for j, (v0, w0) in enumerate(zip(kept_src, kept_dst, strict=True)):
            same_source = point_distance(v, v0) <= tol.member
            same_target = point_distance(w, w0) <= tol.member
            if same_source and same_target:
                duplicate = True
                break
            if same_source != same_target:
                what = "one source has two targets" if same_source else "two sources share a target"
                raise GeomKitInconsistentError(
                    f"pairs {kept_idx[j]} and {i} are not injective: {what}",
                    witness_index=i,
                    residual=point_distance(w, w0) if same_source else point_distance(v, v0),
                )
        if not duplicate:
            kept_src.append(v)
            kept_dst.append(w)
            kept_idx.append(i)
    return kept_src, kept_dst, kept_idx


def _solve_homogeneous(src: FloatArray, dst: FloatArray, tol: Tolerances) -> tuple[FloatArray, FloatArray]:
    """
    Solve F src_i = λ_i dst_i for F (m x m) and λ by the SVD null vector.

    Raises
    ------
        GeomKitInsufficientDataError: If the null space is more than one-dimensional

    """
    m, p = src.shape
    a = np.zeros((p * m, m * m + p))
    for i in range(p):
        rows = slice(i * m, (i + 1) * m)
        a[rows, : m * m] = np.kron(np.eye(m), src[:, i][None, :])
        a[rows, m * m + i] = -dst[:, i]

    # the reduced factor lacks the null vector only for wide systems
    _, s, vt = np.linalg.svd(a, full_matrices=a.shape[0] < a.shape[1])
    cols = a.shape[1]
    spectrum = np.concatenate([s, np.zeros(max(0, cols - s.size))]) / s[0]
    gap = float(spectrum[-2])
    if gap <= tol.rank:
        raise GeomKitInsufficientDataError(
            f"correspondences leave a family of solutions (second null singular value {gap:.3e})",
            rank_gap=gap,
        )
    x = vt[-1]
    f = x[: m * m].reshape(m, m)
    lambdas = x[m * m :]
    if lambdas.sum() < 0:
        f, lambdas = -f, -lambdas
    return f, lambdas


def _project_to_form(f: FloatArray, gram_d: FloatArray, gram_i: FloatArray) -> tuple[FloatArray, float]:
    """
    Nearest matrix with F^T gram_i F = gram_d.

    H = gram_d^-1 F^T gram_i F is self-adjoint for gram_d, so F H^(-1/2) preserves the forms.
    Returns the projected matrix and the relative Frobenius shift.
    """
    h = np.linalg.solve(gram_d, f.T @ gram_i @ f)
    c = float(np.trace(h)) / h.shape[0]
    if not (np.isfinite(c) and c > 0):
        raise GeomKitInconsistentError(f"fitted matrix does not preserve the light cone (scale {c:.3e})")
    f = f / np.sqrt(c)
    root = sqrtm(h / c)
    if np.iscomplexobj(root):
        if float(np.max(np.abs(root.imag))) > 1e-9:
            raise GeomKitInconsistentError("fitted matrix is far from any Lorentz transformation")
        root = root.real
    projected = np.linalg.solve(root.T, f.T).T
    shift = float(np.linalg.norm(projected - f) / np.linalg.norm(f))
    return projected, shift


def fit_between_spheres(
    sources: Sequence[SpherePoint],
    targets: Sequence[SpherePoint],
    domain: KSphere | None = None,
    image: KSphere | None = None,
    tol: Tolerances | None = None,
) -> RestrictedFit:
    """
    Fit a Möbius map from the sphere through ``sources`` to the sphere through ``targets``.

    Args:
    ----
        sources: Domain rays, all on ``domain``
        targets: Image rays, paired with ``sources`` by position
        domain: Domain sphere (default: span of the sources)
        image: Image sphere (default: span of the targets)
        tol: Tolerances (default: configured)

    Returns:
    -------
        The fitted map with per-pair residuals

    Raises:
    ------
        GeomKitInsufficientDataError: Fewer than k+3 distinct pairs or a degenerate configuration
        GeomKitInconsistentError: Non-injective data, mismatched sphere dimensions, or a residual
            above εverify (``witness_index`` names the worst pair)

    """
    tol = tol if tol is not None else get_tolerances()
    if len(sources) != len(targets):
        raise GeomKitInputError(f"got {len(sources)} sources but {len(targets)} targets")
    if not sources:
        raise GeomKitInsufficientDataError("no correspondences given")
    src, dst, index = _deduplicate(sources, targets, tol)

    domain = domain if domain is not None else span(src, tol)
    image = image if image is not None else span(dst, tol)
    if image.k != domain.k:
        raise GeomKitInconsistentError(
            f"sources span a {domain.k}-sphere but targets span a {image.k}-sphere; no Möbius map does that"
        )
    m = domain.k + 2
    if len(src) < m + 1:
        raise GeomKitInsufficientDataError(
            f"need at least {m + 1} distinct correspondences on a {domain.k}-sphere, got {len(src)}"
        )

    src_coords = domain.basis.T @ np.column_stack([v.vector for v in src])
    dst_coords = image.basis.T @ np.column_stack([w.vector for w in dst])
    f, _ = _solve_homogeneous(src_coords, dst_coords, tol)
    f, shift = _project_to_form(f, domain.gram, image.gram)

    fit = RestrictedFit(
        domain=domain,
        image=image,
        matrix=f,
        residuals=tuple(_ray_residual(image.basis @ (f @ src_coords[:, i]), dst[i]) for i in range(len(src))),
        projection_shift=shift,
    )
    worst = int(np.argmax(fit.residuals))
    LOGGER.debug(
        f"fit on {len(src)} pairs ({domain.k}-sphere): max residual {fit.max_residual:.2e}, shift {shift:.2e}"
    )
    if shift > tol.verify or fit.max_residual > tol.verify:
        raise GeomKitInconsistentError(
            f"no Möbius map fits the data: pair {index[worst]} has residual {fit.max_residual:.3e}"
            f" (projection shift {shift:.3e})",
            witness_index=index[worst],
            residual=fit.max_residual,
        )
    return fit


def _spacelike_complement(sphere: KSphere) -> FloatArray:
    """Form-orthonormal basis of the Lorentz-orthogonal complement of the sphere's subspace."""
    j = lorentz_metric(sphere.n)
    c = null_space((j @ sphere.basis).T)
    if c.shape[1] == 0:
        return c
    lower = cholesky(c.T @ j @ c, lower=True)
    return np.linalg.solve(lower, c.T).T


def extend_to_ambient(fit: RestrictedFit) -> MoebiusMap:
    """
    Extend a sphere-to-sphere fit to a Möbius map of S^n.

    The domain subspace goes to the image subspace through the fit; the spacelike
    complements are matched by form-orthonormal frames. Any such extension agrees with
    the fit on the domain sphere.
    """
    d = np.hstack([fit.domain.basis, _spacelike_complement(fit.domain)])
    e = np.hstack([fit.image.basis @ fit.matrix, _spacelike_complement(fit.image)])
    g = np.linalg.solve(d.T, e.T).T
    return MoebiusMap(g, (f"fit({fit.domain.k}-sphere, {len(fit.residuals)} pairs)",)).normalized()


def fit_from_correspondences(
    pairs: Sequence[Correspondence], tol: Tolerances | None = None, n: int | None = None
) -> MoebiusMap:
    """
    Fit the Möbius map of S^n sending every source to its target.

    Needs at least n+3 distinct pairs whose sources are in spherical general position.

    Example:
    -------
        ```python
        pairs = [Correspondence(p, apply(m, p)) for p in random_finite_points(3, 8, rng)]
        fitted = fit_from_correspondences(pairs)
        assert maps_agree(m, fitted, witnesses)
        ```

    Raises
    ------
        GeomKitInsufficientDataError: Too few or degenerate pairs
        GeomKitInconsistentError: The data is not a Möbius map (names the worst pair)

    """
    tol = tol if tol is not None else get_tolerances()
    if not pairs:
        raise GeomKitInsufficientDataError("no correspondences given")
    if n is None:
        finite = next((c.source for c in pairs if not c.source.is_infinity), None)
        finite = finite or next((c.target for c in pairs if not c.target.is_infinity), None)
        if finite is None or finite.coords is None:
            raise GeomKitInputError("cannot infer the dimension from correspondences at infinity only")
        n = len(finite.coords)
    if len(pairs) < n + 3:
        raise GeomKitInsufficientDataError(f"need at least {n + 3} correspondences for n={n}, got {len(pairs)}")

    whole = KSphere(k=n, basis=np.eye(n + 2))
    fit = fit_between_spheres(
        [lift(c.source, n) for c in pairs], [lift(c.target, n) for c in pairs], whole, whole, tol
    )
    fitted = MoebiusMap(fit.matrix, (f"fit({len(pairs)} pairs)",)).normalized()
    LOGGER.info(f"Fitted Möbius map of S^{n} from {len(pairs)} pairs (max residual {fit.max_residual:.2e})")
    return fitted
