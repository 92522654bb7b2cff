"""
The generalized Möbius group acting on S^n.

Every Möbius map is a Lorentz-orthogonal matrix G (G^T J G = J) acting projectively on
null rays. Inversions and hyperplane reflections are Lorentz reflections in the spacelike
vector that represents their mirror, so compositions are plain matrix products.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.any.container import get_tolerances
from geomkit_lib.any.exceptions import GeomKitInconsistentError, GeomKitInputError
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import (
    ExtendedPoint,
    FloatArray,
    SpherePoint,
    _frozen,
    canonical_ray,
    lift,
    lorentz_metric,
    point_distance,
    project,
)
from geomkit_lib.geometry.spheres import KSphere, sphere_from_subspace

LOGGER = psnap_get_logger("geomkit_lib.moebius.maps")


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """
    A Möbius transformation of S^n as an (n+2) x (n+2) matrix.

    The matrix is only meaningful up to a nonzero scalar; ``normalized`` returns the
    representative with G^T J G = J and G[-1, -1] > 0. ``provenance`` records how the
    map was built (e.g. ``("inversion(a=[0. 0.], r=1)",)``) and plays no part in the action.
    """

    matrix: FloatArray
    provenance: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        g = _frozen(self.matrix)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 3:
            raise GeomKitInputError(f"Möbius matrix must be square of size n+2 >= 3, got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise GeomKitInputError("Möbius matrix has non-finite entries")
        object.__setattr__(self, "matrix", g)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0]) - 2

    def lorentz_scale(self) -> float:
        """c with G^T J G ≈ c J."""
        j = lorentz_metric(self.n)
        return float(np.trace(j @ self.matrix.T @ j @ self.matrix)) / (self.n + 2)

    def normalized(self) -> "MoebiusMap":
        """
        The representative with G^T J G = J that preserves the future light cone.

        Raises
        ------
            GeomKitInconsistentError: If G^T J G is not a positive multiple of J

        """
        c = self.lorentz_scale()
        if not c > 0:
            raise GeomKitInconsistentError(f"matrix is not a scaled Lorentz matrix (scale {c:.3e})")
        g = self.matrix / np.sqrt(c)
        if g[-1, -1] < 0:
            g = -g
        return MoebiusMap(g, self.provenance)

    def lorentz_defect(self) -> float:
        """|G^T J G - J| (Frobenius) of the normalized representative."""
        j = lorentz_metric(self.n)
        g = self.normalized().matrix
        return float(np.linalg.norm(g.T @ j @ g - j))

    def __repr__(self) -> str:
        steps = " ∘ ".join(self.provenance) if self.provenance else "matrix"
        return f"MoebiusMap(n={self.n}, {steps})"


def is_lorentz(m: MoebiusMap, tol: Tolerances | None = None) -> bool:
    """True iff the normalized matrix satisfies the Lorentz condition to εverify."""
    tol = tol if tol is not None else get_tolerances()
    try:
        return m.lorentz_defect() <= tol.verify
    except GeomKitInconsistentError:
        return False


def _reflection_in(normal: FloatArray) -> FloatArray:
    """Lorentz reflection v ↦ v - 2 <v, s>/<s, s> s in a spacelike vector s."""
    j = lorentz_metric(normal.shape[0] - 2)
    ss = float(normal @ j @ normal)
    return np.eye(normal.shape[0]) - 2.0 * np.outer(normal, j @ normal) / ss


def _check_n(vector: FloatArray, n: int | None, what: str) -> int:
    if n is not None and vector.shape[0] != n:
        raise GeomKitInputError(f"{what} has {vector.shape[0]} coordinates, expected n={n}")
    if vector.shape[0] < 1:
        raise GeomKitInputError(f"{what} must have at least one coordinate")
    return int(vector.shape[0])


def identity(n: int) -> MoebiusMap:
    if n < 1:
        raise GeomKitInputError(f"dimension n must be >= 1, got {n}")
    return MoebiusMap(np.eye(n + 2), ("identity",))


def from_inversion(a: ArrayLike, r: float, n: int | None = None) -> MoebiusMap:
    """
    Inversion in the sphere S(a, r).

    The sphere is represented by the spacelike vector
    s = (a, (1 + r^2 - |a|^2)/2, (1 - r^2 + |a|^2)/2) with <s, s> = r^2.
    """
    centre = np.asarray(a, dtype=np.float64).reshape(-1)
    _check_n(centre, n, "inversion centre")
    if not r > 0:
        raise GeomKitInputError(f"inversion radius must be positive, got {r}")
    sq = float(centre @ centre)
    r2 = r * r
    s = np.concatenate([centre, [(1.0 + r2 - sq) / 2.0, (1.0 - r2 + sq) / 2.0]])
    return MoebiusMap(_reflection_in(s), (f"inversion(a={np.round(centre, 6).tolist()}, r={r:g})",))


def from_reflection(u: ArrayLike, c: float, n: int | None = None) -> MoebiusMap:
    """Reflection in the hyperplane {x : u·x = c}, represented by s = (u, -c, c)."""
    normal = np.asarray(u, dtype=np.float64).reshape(-1)
    _check_n(normal, n, "hyperplane normal")
    if abs(float(normal @ normal) - 1.0) > 1e-9:
        raise GeomKitInputError("hyperplane normal must be a unit vector")
    s = np.concatenate([normal, [-c, c]])
    return MoebiusMap(_reflection_in(s), (f"reflection(u={np.round(normal, 6).tolist()}, c={c:g})",))


def from_translation(t: ArrayLike) -> MoebiusMap:
    """x ↦ x + t, as two reflections in parallel hyperplanes."""
    shift = np.asarray(t, dtype=np.float64).reshape(-1)
    length = float(np.linalg.norm(shift))
    if length == 0.0:
        return identity(shift.shape[0])
    u = shift / length
    m = compose(from_reflection(u, length / 2.0), from_reflection(u, 0.0))
    return MoebiusMap(m.matrix, (f"translation(t={np.round(shift, 6).tolist()})",))


def from_similarity(scale: float, rotation: ArrayLike, translation: ArrayLike) -> MoebiusMap:
    """
    x ↦ scale · R x + t for an orthogonal R and scale > 0.

    The dilation is a Lorentz boost in the last two coordinates with rapidity -log(scale).
    """
    r = np.asarray(rotation, dtype=np.float64)
    n = r.shape[0]
    if r.shape != (n, n) or not np.allclose(r.T @ r, np.eye(n), atol=1e-9):
        raise GeomKitInputError("rotation must be an orthogonal n x n matrix")
    if not scale > 0:
        raise GeomKitInputError(f"similarity scale must be positive, got {scale}")
    g = np.eye(n + 2)
    g[:n, :n] = r
    ch = (1.0 / scale + scale) / 2.0
    sh = (1.0 / scale - scale) / 2.0
    g[n:, n:] = [[ch, sh], [sh, ch]]
    linear = MoebiusMap(g, (f"similarity(scale={scale:g})",))
    return compose(from_translation(translation), linear)


def from_linear_fractional(a: complex, b: complex, c: complex, d: complex, conjugate: bool = False) -> MoebiusMap:
    """
    The map z ↦ (a z + b)/(c z + d) of the Riemann sphere (n = 2), or its conjugate form
    z ↦ (a z̄ + b)/(c z̄ + d) when ``conjugate`` is set.

    Raises
    ------
        GeomKitInputError: If ad - bc = 0

    """
    det = a * d - b * c
    if det == 0:
        raise GeomKitInputError("linear fractional map needs ad - bc != 0")

    def multiply(k: complex) -> MoebiusMap:
        angle = float(np.angle(k))
        rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        return from_similarity(abs(k), rot, [0.0, 0.0])

    def translate(t: complex) -> MoebiusMap:
        return from_translation([t.real, t.imag])

    conj = from_reflection([0.0, 1.0], 0.0)
    if c == 0:
        m = compose(translate(complex(b / d)), multiply(complex(a / d)))
    else:
        # (az+b)/(cz+d) = a/c - det / (c (c z + d)) = a/c + k / (z + d/c)
        k = complex(-det / (c * c))
        reciprocal = compose(conj, from_inversion([0.0, 0.0], 1.0))
        m = compose(translate(complex(a / c)), compose(multiply(k), compose(reciprocal, translate(complex(d / c)))))
    if conjugate:
        m = compose(m, conj)
    label = "conjugate-lft" if conjugate else "lft"
    return MoebiusMap(m.matrix, (f"{label}(a={a}, b={b}, c={c}, d={d})",))


def compose(outer: MoebiusMap, inner: MoebiusMap) -> MoebiusMap:
    """outer ∘ inner (``inner`` acts first)."""
    if outer.n != inner.n:
        raise GeomKitInputError(f"cannot compose maps of S^{outer.n} and S^{inner.n}")
    return MoebiusMap(outer.matrix @ inner.matrix, outer.provenance + inner.provenance)


def compose_all(maps: Sequence[MoebiusMap]) -> MoebiusMap:
    """maps[0] ∘ maps[1] ∘ ... (the last map acts first)."""
    if not maps:
        raise GeomKitInputError("compose_all needs at least one map")
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = compose(m, result)
    return result


def inverse(m: MoebiusMap) -> MoebiusMap:
    """J G^T J of the normalized representative."""
    g = m.normalized().matrix
    j = lorentz_metric(m.n)
    return MoebiusMap(j @ g.T @ j, tuple(f"inverse({p})" for p in reversed(m.provenance)))


def apply_to_ray(m: MoebiusMap, v: SpherePoint, tol: Tolerances | None = None) -> SpherePoint:
    """
    Image of a null ray.

    Raises
    ------
        GeomKitDegenerateRayError: If the image is not null (the matrix violates the Lorentz condition)

    """
    if v.n != m.n:
        raise GeomKitInputError(f"point of S^{v.n} given to a map of S^{m.n}")
    return canonical_ray(m.matrix @ v.vector, tol)


def apply(m: MoebiusMap, p: ExtendedPoint, tol: Tolerances | None = None) -> ExtendedPoint:
    """project(normalize(G · lift(p)))."""
    return project(apply_to_ray(m, lift(p, m.n), tol), tol)


def apply_to_sphere(m: MoebiusMap, sphere: KSphere, tol: Tolerances | None = None) -> KSphere:
    """The image sphere: the span of the mapped basis."""
    if sphere.n != m.n:
        raise GeomKitInputError(f"sphere of S^{sphere.n} given to a map of S^{m.n}")
    return sphere_from_subspace(m.matrix @ sphere.basis, tol)


def maps_agree(
    first: MoebiusMap, second: MoebiusMap, witnesses: Sequence[ExtendedPoint], tol: Tolerances | None = None
) -> bool:
    """True iff both maps send every witness to the same ray within εverify."""
    tol = tol if tol is not None else get_tolerances()
    if first.n != second.n:
        raise GeomKitInputError(f"cannot compare maps of S^{first.n} and S^{second.n}")
    for w in witnesses:
        v = lift(w, first.n)
        if point_distance(apply_to_ray(first, v, tol), apply_to_ray(second, v, tol)) > tol.verify:
            return False
    return True


def random_moebius(n: int, rng: np.random.Generator, max_steps: int = 5, max_norm: float = 20.0) -> MoebiusMap:
    """
    A random composition of 1..max_steps inversions and hyperplane reflections.

    Inversion centres are normal with covariance I/n (so |a| is about 1) and radii in
    [0.5, 2]; reflections use uniformly random unit normals with standard normal offsets.
    Compositions whose normalized matrix has spectral norm above ``max_norm`` are redrawn:
    such maps squeeze most of S^n into a cap of chordal size about 1/max_norm^2, which
    sampled checks cannot resolve.
    """
    if max_norm < 1.0:
        raise GeomKitInputError(f"max_norm must be >= 1, got {max_norm}")
    while True:
        steps = []
        for _ in range(int(rng.integers(1, max_steps + 1))):
            if rng.random() < 0.6:
                centre = rng.standard_normal(n) / np.sqrt(n)
                steps.append(from_inversion(centre, float(rng.uniform(0.5, 2.0))))
            else:
                u = rng.standard_normal(n)
                steps.append(from_reflection(u / np.linalg.norm(u), float(rng.standard_normal())))
        m = compose_all(steps)
        if float(np.linalg.norm(m.normalized().matrix, 2)) <= max_norm:
            return m
        LOGGER.debug(f"redrawing random Möbius map {m!r}: norm above {max_norm:g}")
