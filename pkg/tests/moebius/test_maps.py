"""Tests for geomkit_lib.moebius.maps."""

import numpy as np
import pytest

from geomkit_lib.any.exceptions import GeomKitInconsistentError, GeomKitInputError
from geomkit_lib.geometry.points import ExtendedPoint, invert_in_sphere, lift, point_distance
from geomkit_lib.geometry.spheres import (
    contains,
    euclidean_sphere,
    random_finite_points,
    random_sphere,
    sample_sphere,
    span,
    sphere_equals,
)
from geomkit_lib.moebius.maps import (
    MoebiusMap,
    apply,
    apply_to_ray,
    apply_to_sphere,
    compose,
    compose_all,
    from_inversion,
    from_linear_fractional,
    from_reflection,
    from_similarity,
    from_translation,
    identity,
    inverse,
    is_lorentz,
    maps_agree,
    random_moebius,
)
from tests.conftest import finite

INF = ExtendedPoint.infinity()
QUARTER_TURN = np.array([[0.0, -1.0], [1.0, 0.0]])


class TestMoebiusMap:
    """Test the matrix wrapper."""

    def test_shape_validation(self):
        with pytest.raises(GeomKitInputError, match="square"):
            MoebiusMap(np.eye(4)[:, :3])
        with pytest.raises(GeomKitInputError, match="square"):
            MoebiusMap(np.eye(2))
        with pytest.raises(GeomKitInputError, match="non-finite"):
            MoebiusMap(np.full((4, 4), np.nan))

    def test_normalized_removes_scale_and_sign(self):
        m = MoebiusMap(-2.0 * np.eye(4)).normalized()
        assert m.matrix == pytest.approx(np.eye(4))

    def test_zero_matrix_is_not_lorentz(self):
        with pytest.raises(GeomKitInconsistentError, match="not a scaled Lorentz matrix"):
            MoebiusMap(np.zeros((4, 4))).normalized()
        assert not is_lorentz(MoebiusMap(np.zeros((4, 4))))

    def test_non_lorentz_matrix(self):
        m = MoebiusMap(np.diag([1.0, 1.0, 1.0, 2.0]))
        assert m.lorentz_defect() > 0.1
        assert not is_lorentz(m)

    def test_identity(self):
        m = identity(3)
        assert m.n == 3
        assert is_lorentz(m)
        assert apply(m, finite(1, 2, 3)).array == pytest.approx([1, 2, 3])
        with pytest.raises(GeomKitInputError):
            identity(0)

    def test_repr_lists_provenance(self):
        assert repr(from_inversion([0.0, 0.0], 1.0)) == "MoebiusMap(n=2, inversion(a=[0.0, 0.0], r=1))"
        assert repr(MoebiusMap(np.eye(3))) == "MoebiusMap(n=1, matrix)"


class TestGenerators:
    """Test the inversion, reflection and similarity constructors."""

    def test_inversion_in_unit_sphere(self):
        m = from_inversion([0.0, 0.0, 0.0], 1.0)
        assert is_lorentz(m)
        assert apply(m, finite(2, 0, 0)).array == pytest.approx([0.5, 0.0, 0.0])

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_inversion_matches_formula(self, n, rng):
        """The Lorentz reflection acts exactly as x -> a + (r/|x-a|)^2 (x-a)."""
        for _ in range(200):
            a = rng.standard_normal(n) / np.sqrt(n)
            r = float(rng.uniform(0.5, 2.0))
            m = from_inversion(a, r)
            x = finite(*rng.standard_normal(n) * 2.0)
            expected = invert_in_sphere(a, r, x).array
            assert apply(m, x).array == pytest.approx(expected, rel=1e-8, abs=1e-8)
            assert apply(m, finite(*a)).is_infinity
            assert apply(m, INF).array == pytest.approx(a, abs=1e-9)

    def test_inversion_is_an_involution(self, rng):
        m = from_inversion([0.5, -1.0], 1.5)
        assert compose(m, m).normalized().matrix == pytest.approx(np.eye(4), abs=1e-12)

    def test_inversion_validation(self):
        with pytest.raises(GeomKitInputError, match="radius must be positive"):
            from_inversion([0.0], 0.0)
        with pytest.raises(GeomKitInputError, match="expected n=3"):
            from_inversion([0.0, 0.0], 1.0, n=3)

    def test_reflection(self):
        m = from_reflection([1.0, 0.0], 1.0)
        assert apply(m, finite(3, 5)).array == pytest.approx([-1.0, 5.0])
        assert apply(m, INF).is_infinity
        with pytest.raises(GeomKitInputError, match="unit vector"):
            from_reflection([1.0, 1.0], 0.0)

    def test_translation(self):
        m = from_translation([3.0, -1.0])
        assert apply(m, finite(1, 2)).array == pytest.approx([4.0, 1.0])
        assert apply(m, INF).is_infinity
        assert from_translation([0.0, 0.0]).matrix == pytest.approx(np.eye(4))

    def test_similarity(self):
        m = from_similarity(2.0, QUARTER_TURN, [1.0, 0.0])
        assert is_lorentz(m)
        assert apply(m, finite(1, 0)).array == pytest.approx([1.0, 2.0])
        assert apply(m, finite(0, 0)).array == pytest.approx([1.0, 0.0])

    def test_similarity_validation(self):
        with pytest.raises(GeomKitInputError, match="orthogonal"):
            from_similarity(1.0, np.array([[1.0, 1.0], [0.0, 1.0]]), [0.0, 0.0])
        with pytest.raises(GeomKitInputError, match="scale must be positive"):
            from_similarity(0.0, np.eye(2), [0.0, 0.0])


class TestLinearFractional:
    """Test the complex-plane constructor (n = 2)."""

    def test_general_map(self):
        m = from_linear_fractional(2, 1, 1, 3)
        assert apply(m, finite(1, 1)).array == pytest.approx([14 / 17, 5 / 17])
        assert apply(m, finite(-3, 0)).is_infinity
        assert apply(m, INF).array == pytest.approx([2.0, 0.0])

    def test_conjugate_map(self):
        m = from_linear_fractional(2, 1, 1, 3, conjugate=True)
        assert apply(m, finite(1, 1)).array == pytest.approx([14 / 17, -5 / 17])

    def test_affine_map(self):
        m = from_linear_fractional(2, 1, 0, 1)
        assert apply(m, finite(1, 1)).array == pytest.approx([3.0, 2.0])
        assert apply(m, INF).is_infinity

    def test_rotation_by_i(self):
        m = from_linear_fractional(1j, 0, 0, 1)
        assert apply(m, finite(1, 0)).array == pytest.approx([0.0, 1.0], abs=1e-12)

    def test_singular(self):
        with pytest.raises(GeomKitInputError, match="ad - bc"):
            from_linear_fractional(1, 2, 2, 4)


class TestGroupOperations:
    """Test compose, inverse and action."""

    def test_compose_order(self):
        """compose(outer, inner) applies inner first."""
        shift = from_translation([1.0, 0.0])
        invert = from_inversion([0.0, 0.0], 1.0)
        p = finite(1, 0)
        assert apply(compose(shift, invert), p).array == pytest.approx([2.0, 0.0])
        assert apply(compose(invert, shift), p).array == pytest.approx([0.5, 0.0])

    def test_compose_all(self):
        a = from_translation([1.0, 0.0])
        b = from_inversion([0.0, 0.0], 2.0)
        c = from_reflection([0.0, 1.0], 0.0)
        expected = compose(a, compose(b, c))
        assert compose_all([a, b, c]).matrix == pytest.approx(expected.matrix)
        assert compose_all([a]).matrix == pytest.approx(a.matrix)
        with pytest.raises(GeomKitInputError):
            compose_all([])

    def test_compose_dimension_mismatch(self):
        with pytest.raises(GeomKitInputError, match="cannot compose"):
            compose(identity(2), identity(3))

    def test_provenance_accumulates(self):
        m = compose(from_translation([1.0, 0.0]), from_inversion([0.0, 0.0], 1.0))
        assert m.provenance == ("translation(t=[1.0, 0.0])", "inversion(a=[0.0, 0.0], r=1)")

    def test_inverse(self, rng):
        for _ in range(20):
            m = random_moebius(3, rng)
            back = compose(inverse(m), m).normalized()
            assert back.matrix == pytest.approx(np.eye(5), abs=1e-9)
            p = finite(*rng.standard_normal(3))
            assert apply(inverse(m), apply(m, p)).array == pytest.approx(p.array, abs=1e-8)

    def test_apply_to_ray_dimension_check(self):
        with pytest.raises(GeomKitInputError, match="given to a map"):
            apply_to_ray(identity(2), lift(finite(0, 0, 0), 3))

    def test_maps_agree(self, rng):
        m = random_moebius(2, rng)
        witnesses = random_finite_points(2, 6, rng)
        assert maps_agree(m, MoebiusMap(3.0 * m.matrix), witnesses)
        assert not maps_agree(m, compose(from_translation([1e-3, 0.0]), m), witnesses)
        with pytest.raises(GeomKitInputError):
            maps_agree(identity(2), identity(3), witnesses)


class TestSpherePreservation:
    """Möbius maps send k-spheres to k-spheres."""

    def test_circle_through_centre_becomes_line(self):
        m = from_inversion([0.0, 0.0], 1.0)
        image = apply_to_sphere(m, euclidean_sphere([1.0, 0.0], 1.0))
        assert image.k == 1
        assert contains(image, lift(INF, 2))
        assert contains(image, lift(finite(0.5, 7.0), 2))

    def test_random_maps_preserve_random_spheres(self, rng):
        """Image spans keep dimension k and contain every sampled image point."""
        violations = []
        for trial in range(200):
            n = int(rng.integers(2, 6))
            k = int(rng.integers(0, n))
            m = random_moebius(n, rng)
            sphere = random_sphere(n, k, rng)
            image = apply_to_sphere(m, sphere)
            mapped = [apply_to_ray(m, p) for p in sample_sphere(sphere, k + 4, seed=trial)]
            if image.k != k or span(mapped).k != k:
                violations.append((trial, "dimension"))
            if not all(contains(image, p) for p in mapped):
                violations.append((trial, "containment"))
        assert violations == []

    def test_apply_to_sphere_dimension_check(self):
        with pytest.raises(GeomKitInputError, match="given to a map"):
            apply_to_sphere(identity(3), euclidean_sphere([0.0, 0.0], 1.0))


class TestRandomMoebius:
    """Test the random map generator."""

    def test_deterministic(self):
        first = random_moebius(3, np.random.default_rng(4))
        again = random_moebius(3, np.random.default_rng(4))
        assert first.matrix.tolist() == again.matrix.tolist()

    def test_lorentz_and_bounded(self, rng):
        for _ in range(30):
            m = random_moebius(4, rng, max_norm=5.0)
            assert is_lorentz(m)
            assert np.linalg.norm(m.normalized().matrix, 2) <= 5.0
            assert 1 <= len(m.provenance) <= 5

    def test_moves_points(self, rng):
        p = lift(finite(0.3, 0.1, -0.2), 3)
        moved = [point_distance(apply_to_ray(random_moebius(3, rng), p), p) for _ in range(10)]
        assert max(moved) > 1e-3

    def test_bad_norm_cap(self, rng):
        with pytest.raises(GeomKitInputError, match="max_norm"):
            random_moebius(2, rng, max_norm=0.5)

    def test_identity_preserves_spheres_exactly(self):
        s = euclidean_sphere([0.0, 0.0, 1.0], 2.0)
        assert sphere_equals(apply_to_sphere(identity(3), s), s)
