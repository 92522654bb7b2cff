"""
k-spheres of S^n in the Lorentz light-cone model.

A k-sphere is a (k+2)-dimensional subspace W of R^{n+2} on which the Lorentz form has
signature (k+1, 1); its points are the null rays inside W. Circles are k=1, point
pairs k=0 and S^n itself is k=n. Spans, incidences and intersections reduce to numerical
linear algebra on orthonormal bases of these subspaces.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from partsnap_logger.logging import psnap_get_logger
from scipy.linalg import null_space

from geomkit_lib.any.container import get_tolerances
from geomkit_lib.any.exceptions import (
    GeomKitIllConditionedError,
    GeomKitInputError,
    GeomKitTooFewPointsError,
)
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import (
    ExtendedPoint,
    FloatArray,
    SpherePoint,
    _frozen,
    canonical_ray,
    lift,
    lorentz_metric,
    project,
    stack,
)

LOGGER = psnap_get_logger("geomkit_lib.geometry.spheres")


@dataclass(frozen=True, eq=False)
class KSphere:
    """
    A k-sphere stored as an orthonormal basis of its (k+2)-dimensional Lorentz subspace.

    ``gram`` caches the Lorentz form restricted to the basis. ``rank_gap`` is the smallest
    relative singular value kept when the sphere was spanned from points (1.0 when the
    basis came from an exact construction); values near εrank mean the sphere nearly
    collapsed a dimension.
    """

    k: int
    basis: FloatArray
    rank_gap: float = 1.0
    gram: FloatArray = field(init=False)

    def __post_init__(self) -> None:
        basis = _frozen(self.basis)
        if basis.ndim != 2 or basis.shape[1] != self.k + 2:
            raise GeomKitInputError(f"{self.k}-sphere needs a basis with {self.k + 2} columns, got {basis.shape}")
        if not 0 <= self.k <= basis.shape[0] - 2:
            raise GeomKitInputError(f"sphere dimension {self.k} out of range for n={basis.shape[0] - 2}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram", _frozen(basis.T @ lorentz_metric(basis.shape[0] - 2) @ basis))

    @property
    def n(self) -> int:
        return int(self.basis.shape[0]) - 2

    def projector(self) -> FloatArray:
        """Orthogonal projector onto W."""
        return self.basis @ self.basis.T

    def __repr__(self) -> str:
        return f"KSphere(k={self.k}, n={self.n})"


@dataclass(frozen=True)
class Empty:
    """Two spheres with no common point."""


@dataclass(frozen=True)
class SinglePoint:
    """Two spheres touching in exactly one point (tangency)."""

    point: SpherePoint


@dataclass(frozen=True)
class SphereIntersection:
    """Two spheres meeting in a sphere (a point pair when k=0)."""

    sphere: KSphere


Intersection = Empty | SinglePoint | SphereIntersection


def _relative_spectrum(matrix: FloatArray) -> tuple[FloatArray, FloatArray]:
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return u, np.zeros_like(s)
    return u, s / s[0]


def _signature(gram: FloatArray, tol: Tolerances) -> tuple[int, int, int, float]:
    """(negative, zero, positive, smallest |eigenvalue|) of a form given on an orthonormal basis."""
    eig = np.linalg.eigvalsh((gram + gram.T) / 2.0)
    mags = np.abs(eig)
    ambiguous = mags[(mags > tol.rank) & (mags <= tol.ambiguous_ceiling)]
    if ambiguous.size:
        raise GeomKitIllConditionedError(
            f"restricted Lorentz form has an eigenvalue {float(ambiguous.min()):.3e} inside the ambiguity band",
            gap=float(ambiguous.min()),
        )
    zero = int(np.count_nonzero(mags <= tol.rank))
    neg = int(np.count_nonzero(eig < -tol.rank))
    pos = int(eig.size) - zero - neg
    smallest = float(mags.min()) if mags.size else 0.0
    return neg, zero, pos, smallest


def sphere_from_subspace(vectors: ArrayLike, tol: Tolerances | None = None) -> KSphere:
    """
    The sphere whose Lorentz subspace is the column span of ``vectors``.

    Raises
    ------
        GeomKitTooFewPointsError: If the numerical rank is below 2
        GeomKitIllConditionedError: If the span touches the light cone tangentially

    """
    tol = tol if tol is not None else get_tolerances()
    m = np.asarray(vectors, dtype=np.float64)
    if m.ndim == 1:
        m = m[:, None]
    u, rel = _relative_spectrum(m)
    rank = int(np.count_nonzero(rel > tol.rank))
    if rank < 2:
        raise GeomKitTooFewPointsError(f"span has numerical rank {rank}; a sphere needs at least 2", rank=rank)

    basis = u[:, :rank]
    neg, zero, _, smallest = _signature(basis.T @ lorentz_metric(m.shape[0] - 2) @ basis, tol)
    if neg != 1 or zero != 0:
        raise GeomKitIllConditionedError(
            f"span of rank {rank} is not Lorentzian (negative={neg}, degenerate={zero})",
            gap=smallest,
        )
    return KSphere(k=rank - 2, basis=basis, rank_gap=float(rel[rank - 1]))


def span(points: Sequence[SpherePoint], tol: Tolerances | None = None) -> KSphere:
    """
    The smallest sphere containing ``points``.

    Raises
    ------
        GeomKitInputError: If ``points`` is empty or mixes dimensions
        GeomKitTooFewPointsError: If the points are all the same ray

    Example:
    -------
        ```python
        circle = span(lift_all([finite(0, 0), finite(2, 0), finite(0, 2)], n=2))
        assert sphere_dim(circle) == 1
        ```

    """
    if not points:
        raise GeomKitInputError("span needs at least one point")
    dims = {p.n for p in points}
    if len(dims) != 1:
        raise GeomKitInputError(f"span got points of mixed dimensions: {sorted(dims)}")
    sphere = sphere_from_subspace(stack(points), tol)
    LOGGER.debug(f"span of {len(points)} points -> {sphere.k}-sphere (gap {sphere.rank_gap:.2e})")
    return sphere


def sphere_dim(sphere: KSphere) -> int:
    return sphere.k


def contains(sphere: KSphere, p: SpherePoint, tol: Tolerances | None = None) -> bool:
    """True iff the residual of ``p`` against the sphere's subspace is at most εmember·|v|."""
    tol = tol if tol is not None else get_tolerances()
    if p.n != sphere.n:
        raise GeomKitInputError(f"point in S^{p.n} tested against a sphere in S^{sphere.n}")
    return membership_residual(sphere, p) <= tol.member * float(np.linalg.norm(p.vector))


def membership_residual(sphere: KSphere, p: SpherePoint) -> float:
    """Euclidean distance from ``p``'s vector to the sphere's subspace."""
    v = p.vector
    return float(np.linalg.norm(v - sphere.basis @ (sphere.basis.T @ v)))


def incident_indices(sphere: KSphere, points: Sequence[SpherePoint], tol: Tolerances | None = None) -> list[int]:
    """Indices of the points contained in the sphere (same test as ``contains``, vectorized)."""
    tol = tol if tol is not None else get_tolerances()
    if not points:
        return []
    v = stack(points)
    residual = np.linalg.norm(v - sphere.basis @ (sphere.basis.T @ v), axis=0)
    return [int(i) for i in np.flatnonzero(residual <= tol.member * np.linalg.norm(v, axis=0))]


def sphere_equals(a: KSphere, b: KSphere, tol: Tolerances | None = None) -> bool:
    """True iff both spheres have the same subspace."""
    tol = tol if tol is not None else get_tolerances()
    if a.n != b.n or a.k != b.k:
        return False
    residual = b.basis - a.basis @ (a.basis.T @ b.basis)
    return float(np.max(np.linalg.norm(residual, axis=0))) <= tol.member


def intersect(a: KSphere, b: KSphere, tol: Tolerances | None = None) -> Intersection:
    """
    Intersect two spheres.

    The common subspace is read off the null space of [B_a, -B_b]; the restricted form
    then decides: signature (d+1, 1) is a d-sphere, a single null direction is a tangency
    point and a positive-definite (or timelike-line) remainder is empty.

    Raises
    ------
        GeomKitIllConditionedError: If a singular value or eigenvalue lies in the ambiguity band

    """
    tol = tol if tol is not None else get_tolerances()
    if a.n != b.n:
        raise GeomKitInputError(f"cannot intersect spheres of S^{a.n} and S^{b.n}")

    stacked = np.hstack([a.basis, -b.basis])
    _, s, vt = np.linalg.svd(stacked, full_matrices=True)
    rel = s / s[0]
    ambiguous = rel[(rel > tol.rank) & (rel <= tol.ambiguous_ceiling)]
    if ambiguous.size:
        raise GeomKitIllConditionedError(
            f"subspace intersection rank is ambiguous (singular value {float(ambiguous.min()):.3e})",
            gap=float(ambiguous.min()),
        )
    null_rows = [i for i in range(vt.shape[0]) if i >= rel.size or rel[i] <= tol.rank]
    if not null_rows:
        return Empty()

    common = a.basis @ vt[null_rows, : a.k + 2].T
    u, crel = _relative_spectrum(common)
    dim = int(np.count_nonzero(crel > tol.rank))
    if dim == 0:
        return Empty()
    w = u[:, :dim]
    gram = w.T @ lorentz_metric(a.n) @ w
    neg, zero, _, smallest = _signature(gram, tol)

    if neg == 0 and zero == 0:
        return Empty()
    if neg == 1 and zero == 0:
        if dim == 1:
            return Empty()
        return SphereIntersection(KSphere(k=dim - 2, basis=w))
    if neg == 0 and zero == 1:
        eig, vecs = np.linalg.eigh((gram + gram.T) / 2.0)
        null_dir = w @ vecs[:, int(np.argmin(np.abs(eig)))]
        return SinglePoint(canonical_ray(null_dir, tol))
    raise GeomKitIllConditionedError(
        f"intersection has an impossible signature (negative={neg}, degenerate={zero})", gap=smallest
    )


def lorentz_frame(sphere: KSphere) -> tuple[FloatArray, FloatArray]:
    """
    A form-orthonormal frame of the sphere's subspace.

    Returns
    -------
        (timelike unit vector t with Q(t) = -1, matrix of k+1 spacelike unit vectors)

    """
    eig, vecs = np.linalg.eigh((sphere.gram + sphere.gram.T) / 2.0)
    scaled = sphere.basis @ vecs / np.sqrt(np.abs(eig))
    neg = int(np.argmin(eig))
    spacelike = np.delete(scaled, neg, axis=1)
    return scaled[:, neg], spacelike


def sample_sphere(sphere: KSphere, count: int, seed: int, tol: Tolerances | None = None) -> list[SpherePoint]:
    """
    Draw ``count`` points of the sphere, deterministically for ``seed``.

    Points are t + Σ u_i s_i for a form-orthonormal frame and u uniform on the unit
    k-sphere, so they are pairwise distinct almost surely when k >= 1. A 0-sphere has
    only two points: the samples alternate between them from a seeded start, so any
    ``count >= 2`` returns both.
    """
    if count < 1:
        raise GeomKitInputError(f"sample count must be >= 1, got {count}")
    tol = tol if tol is not None else get_tolerances()
    rng = np.random.default_rng(seed)
    t, spacelike = lorentz_frame(sphere)
    if spacelike.shape[1] == 1:
        start = int(rng.integers(2))
        signs = [1.0 if (start + i) % 2 == 0 else -1.0 for i in range(count)]
        return [canonical_ray(t + sign * spacelike[:, 0], tol) for sign in signs]
    points = []
    for _ in range(count):
        u = rng.standard_normal(spacelike.shape[1])
        u /= np.linalg.norm(u)
        points.append(canonical_ray(t + spacelike @ u, tol))
    return points


def random_finite_points(n: int, count: int, rng: np.random.Generator, scale: float = 1.0) -> list[ExtendedPoint]:
    return [ExtendedPoint.finite(scale * rng.standard_normal(n)) for _ in range(count)]


def random_sphere(n: int, k: int, rng: np.random.Generator, tol: Tolerances | None = None) -> KSphere:
    """A generic k-sphere of S^n: the span of k+2 random finite points."""
    if not 0 <= k <= n:
        raise GeomKitInputError(f"sphere dimension {k} out of range for n={n}")
    while True:
        sphere = span([lift(p, n) for p in random_finite_points(n, k + 2, rng)], tol)
        if sphere.k == k:
            return sphere


def _sphere_orthogonal_to(normal: FloatArray, tol: Tolerances | None) -> KSphere:
    n = normal.shape[0] - 2
    return sphere_from_subspace(null_space((lorentz_metric(n) @ normal)[None, :]), tol)


def euclidean_sphere(center: ArrayLike, radius: float, tol: Tolerances | None = None) -> KSphere:
    """The (n-1)-sphere S(a, r) = {x : |x - a| = r}."""
    a = np.asarray(center, dtype=np.float64).reshape(-1)
    if not radius > 0:
        raise GeomKitInputError(f"sphere radius must be positive, got {radius}")
    sq = float(a @ a)
    r2 = radius * radius
    normal = np.concatenate([a, [(1.0 + r2 - sq) / 2.0, (1.0 - r2 + sq) / 2.0]])
    return _sphere_orthogonal_to(normal, tol)


def affine_sphere(normal: ArrayLike, offset: float, tol: Tolerances | None = None) -> KSphere:
    """The hyperplane {x : u·x = c} together with ∞, as an (n-1)-sphere."""
    u = np.asarray(normal, dtype=np.float64).reshape(-1)
    length = float(np.linalg.norm(u))
    if length == 0.0:
        raise GeomKitInputError("hyperplane normal must be nonzero")
    u = u / length
    c = offset / length
    return _sphere_orthogonal_to(np.concatenate([u, [-c, c]]), tol)


def center_and_radius(sphere: KSphere, tol: Tolerances | None = None) -> tuple[FloatArray, float] | None:
    """
    Euclidean centre and radius of a round sphere, or ``None`` if it passes through ∞.

    The centre lies in the affine hull of the sphere, so this is well defined for every k.
    """
    tol = tol if tol is not None else get_tolerances()
    if contains(sphere, lift(ExtendedPoint.infinity(), sphere.n), tol):
        return None
    pts = [project(p, tol).array for p in sample_sphere(sphere, sphere.k + 6, seed=0, tol=tol)]
    p0 = pts[0]
    d = np.column_stack([p - p0 for p in pts[1:]])
    # |c - p_i|^2 = r^2 with c = p0 + D t  <=>  2 (p_i - p0)·D t = |p_i - p0|^2
    rows = np.array([2.0 * (p - p0) @ d for p in pts[1:]])
    rhs = np.array([float((p - p0) @ (p - p0)) for p in pts[1:]])
    t, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    c = p0 + d @ t
    return c, float(np.linalg.norm(pts[0] - c))
