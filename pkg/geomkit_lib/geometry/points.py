"""
Points of S^n in the Lorentz light-cone model.

A point of S^n = R^n ∪ {∞} is a null ray of the quadratic form
Q(v) = v_1^2 + ... + v_{n+1}^2 - v_{n+2}^2 on R^{n+2}. Finite points lift as

    x ↦ (x, (1 - |x|^2)/2, (1 + |x|^2)/2)

and ∞ is the limit ray (0, ..., 0, -1, 1). Rays are stored canonically: unit Euclidean
norm with positive last coordinate, so two points are equal when their canonical
vectors are close.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from geomkit_lib.any.container import get_tolerances
from geomkit_lib.any.exceptions import GeomKitDegenerateRayError, GeomKitInputError
from geomkit_lib.config.schemas import Tolerances

FloatArray = NDArray[np.float64]


def _frozen(values: ArrayLike) -> FloatArray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ExtendedPoint:
    """
    A point of R^n ∪ {∞}.

    ``coords`` is ``None`` for the point at infinity. Use ``ExtendedPoint.finite`` and
    ``ExtendedPoint.infinity`` rather than the constructor.
    """

    coords: tuple[float, ...] | None

    def __post_init__(self) -> None:
        if self.coords is not None:
            if len(self.coords) == 0:
                raise GeomKitInputError("finite point needs at least one coordinate")
            if not all(np.isfinite(c) for c in self.coords):
                raise GeomKitInputError(f"finite point has non-finite coordinates: {self.coords}")

    @classmethod
    def finite(cls, coords: ArrayLike) -> "ExtendedPoint":
        """Build a finite point from any 1-D array-like."""
        arr = np.asarray(coords, dtype=np.float64).reshape(-1)
        return cls(tuple(float(c) for c in arr))

    @classmethod
    def infinity(cls) -> "ExtendedPoint":
        """The point at infinity."""
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.coords is None

    @property
    def array(self) -> FloatArray:
        """Coordinates as a read-only array (raises for ∞)."""
        if self.coords is None:
            raise GeomKitInputError("the point at infinity has no coordinates")
        return _frozen(self.coords)

    def check_dim(self, n: int) -> None:
        """Raise GeomKitInputError unless this point belongs to R^n ∪ {∞}."""
        if self.coords is not None and len(self.coords) != n:
            raise GeomKitInputError(f"point has {len(self.coords)} coordinates, expected n={n}")

    def __str__(self) -> str:
        if self.coords is None:
            return "inf"
        return "(" + ", ".join(f"{c:.6g}" for c in self.coords) + ")"


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """
    A point of S^n as a null vector of R^{n+2}.

    Values built by ``lift`` and ``canonical_ray`` are normalized (unit norm, last
    coordinate positive). Compare with ``equals`` or ``point_distance``, never ``==``.
    """

    vector: FloatArray = field()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", _frozen(self.vector))
        if self.vector.ndim != 1 or self.vector.shape[0] < 3:
            raise GeomKitInputError(f"sphere point needs a vector of length n+2 >= 3, got shape {self.vector.shape}")

    @property
    def n(self) -> int:
        return int(self.vector.shape[0]) - 2

    def equals(self, other: "SpherePoint", tol: Tolerances | None = None) -> bool:
        """Two points are equal iff their canonical vectors differ by at most εmember."""
        tol = tol if tol is not None else get_tolerances()
        return point_distance(self, other) <= tol.member

    def __repr__(self) -> str:
        return f"SpherePoint({np.array2string(self.vector, precision=6)})"


def lorentz_metric(n: int) -> FloatArray:
    """J = diag(1, ..., 1, -1) of size n+2."""
    diag = np.ones(n + 2)
    diag[-1] = -1.0
    return np.diag(diag)


def lorentz_inner(u: ArrayLike, v: ArrayLike) -> float:
    """The bilinear form u_1 v_1 + ... + u_{n+1} v_{n+1} - u_{n+2} v_{n+2}."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    return float(a[:-1] @ b[:-1] - a[-1] * b[-1])


def quadratic_form(v: ArrayLike) -> float:
    """Q(v)."""
    return lorentz_inner(v, v)


def canonical_ray(vector: ArrayLike, tol: Tolerances | None = None) -> SpherePoint:
    """
    Normalize a null vector to its canonical representative.

    Raises
    ------
        GeomKitDegenerateRayError: If the vector is zero or |Q| exceeds εnull after normalization

    """
    tol = tol if tol is not None else get_tolerances()
    v = np.asarray(vector, dtype=np.float64).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not np.isfinite(norm):
        raise GeomKitDegenerateRayError(f"cannot normalize vector with norm {norm}")
    u = v / norm
    if u[-1] < 0:
        u = -u
    q = quadratic_form(u)
    if abs(q) > tol.null:
        raise GeomKitDegenerateRayError(f"vector is not null (|Q| = {abs(q):.3e} > {tol.null:.1e})")
    return SpherePoint(u)


def lift(p: ExtendedPoint, n: int) -> SpherePoint:
    """
    Lift a point of R^n ∪ {∞} to its canonical null ray.

    Example:
    -------
        >>> lift(ExtendedPoint.finite([0.0, 0.0]), 2).vector
        array([0.        , 0.        , 0.70710678, 0.70710678])

    """
    if n < 1:
        raise GeomKitInputError(f"dimension n must be >= 1, got {n}")
    p.check_dim(n)
    if p.coords is None:
        v = np.zeros(n + 2)
        v[-2] = -1.0
        v[-1] = 1.0
    else:
        x = p.array
        sq = float(x @ x)
        v = np.concatenate([x, [(1.0 - sq) / 2.0, (1.0 + sq) / 2.0]])
    return SpherePoint(v / np.linalg.norm(v))


def project(v: SpherePoint, tol: Tolerances | None = None) -> ExtendedPoint:
    """
    Map a null ray back to R^n ∪ {∞}.

    With u = (x', a, b) the canonical ray, the point is x' / (a + b). For |x| > 1 the sum
    a + b cancels, so it is taken from the null identity a + b = |x'|² / (b - a) instead.
    The ray is ∞ when its finite part x' vanishes to εnull, which keeps finite points up to
    |x| of roughly sqrt(2) / εnull.

    Raises
    ------
        GeomKitDegenerateRayError: If the vector is not a null ray

    """
    tol = tol if tol is not None else get_tolerances()
    u = canonical_ray(v.vector, tol).vector
    head = u[:-2]
    if u[-2] >= 0:
        return ExtendedPoint.finite(head / (u[-1] + u[-2]))
    sq = float(head @ head)
    if np.sqrt(sq) <= tol.null:
        return ExtendedPoint.infinity()
    return ExtendedPoint.finite(head * ((u[-1] - u[-2]) / sq))


def lift_all(points: Iterable[ExtendedPoint], n: int) -> list[SpherePoint]:
    return [lift(p, n) for p in points]


def stack(points: Sequence[SpherePoint]) -> FloatArray:
    """Vectors of ``points`` as the columns of an (n+2) x m matrix."""
    return np.column_stack([p.vector for p in points])


def point_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Euclidean distance between canonical unit null vectors (bounded by 2)."""
    a = p.vector / np.linalg.norm(p.vector)
    b = q.vector / np.linalg.norm(q.vector)
    if a[-1] < 0:
        a = -a
    if b[-1] < 0:
        b = -b
    return float(np.linalg.norm(a - b))


def distinct_points(points: Iterable[SpherePoint], tol: Tolerances | None = None) -> tuple[list[SpherePoint], int]:
    """
    Merge points that are equal under εmember, keeping first occurrences.

    Returns
    -------
        (distinct points in input order, number of merged duplicates)

    """
    tol = tol if tol is not None else get_tolerances()
    kept: list[SpherePoint] = []
    merged = 0
    for p in points:
        if any(point_distance(p, q) <= tol.member for q in kept):
            merged += 1
        else:
            kept.append(p)
    return kept, merged


def to_unit_sphere(p: ExtendedPoint, n: int) -> FloatArray:
    """
    Coordinates of ``p`` on the unit sphere S^n ⊂ R^{n+1} (inverse stereographic projection).

    ∞ goes to (0, ..., 0, -1) and the origin to (0, ..., 0, 1).
    """
    v = lift(p, n).vector
    return v[:-1] / v[-1]


def from_unit_sphere(xi: ArrayLike) -> ExtendedPoint:
    """
    Stereographic projection of a unit vector of R^{n+1} to R^n ∪ {∞}.

    Raises
    ------
        GeomKitInputError: If ``xi`` is not a unit vector

    """
    x = np.asarray(xi, dtype=np.float64).reshape(-1)
    if x.shape[0] < 2 or abs(float(x @ x) - 1.0) > 1e-9:
        raise GeomKitInputError("from_unit_sphere expects a unit vector of length n+1 >= 2")
    v = np.concatenate([x, [1.0]])
    return project(SpherePoint(v / np.linalg.norm(v)))


def invert_in_sphere(a: ArrayLike, r: float, p: ExtendedPoint) -> ExtendedPoint:
    """
    Inversion in the sphere S(a, r): x ↦ a + (r / |x - a|)^2 (x - a).

    The centre goes to ∞ and ∞ to the centre.
    """
    if not r > 0:
        raise GeomKitInputError(f"inversion radius must be positive, got {r}")
    centre = np.asarray(a, dtype=np.float64).reshape(-1)
    if p.coords is None:
        return ExtendedPoint.finite(centre)
    p.check_dim(centre.shape[0])
    d = p.array - centre
    sq = float(d @ d)
    if sq == 0.0:
        return ExtendedPoint.infinity()
    return ExtendedPoint.finite(centre + (r * r / sq) * d)


def reflect_in_hyperplane(u: ArrayLike, c: float, p: ExtendedPoint) -> ExtendedPoint:
    """Euclidean reflection in the hyperplane {x : u·x = c}; ∞ is fixed."""
    normal = np.asarray(u, dtype=np.float64).reshape(-1)
    if abs(float(normal @ normal) - 1.0) > 1e-9:
        raise GeomKitInputError("hyperplane normal must be a unit vector")
    if p.coords is None:
        return p
    p.check_dim(normal.shape[0])
    x = p.array
    return ExtendedPoint.finite(x - 2.0 * (float(normal @ x) - c) * normal)
