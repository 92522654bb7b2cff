"""Tests for geomkit_lib.geometry.spheres."""

import numpy as np
import pytest

from geomkit_lib.any.exceptions import GeomKitIllConditionedError, GeomKitInputError, GeomKitTooFewPointsError
from geomkit_lib.geometry.points import ExtendedPoint, lift, point_distance, project
from geomkit_lib.geometry.spheres import (
    Empty,
    KSphere,
    SinglePoint,
    SphereIntersection,
    affine_sphere,
    center_and_radius,
    contains,
    euclidean_sphere,
    incident_indices,
    intersect,
    membership_residual,
    random_finite_points,
    random_sphere,
    sample_sphere,
    span,
    sphere_dim,
    sphere_equals,
    sphere_from_subspace,
)
from tests.conftest import finite, lifted

INF = ExtendedPoint.infinity()


class TestSpan:
    """Test span and sphere_from_subspace."""

    def test_three_points_span_a_circle(self):
        circle = span(lifted(3, finite(1, 0, 0), finite(0, 1, 0), finite(-1, 0, 0)))
        assert sphere_dim(circle) == 1
        assert circle.n == 3
        assert contains(circle, lift(finite(0, -1, 0), 3))
        assert not contains(circle, lift(finite(0, 0, 1), 3))

    def test_concircular_points_stay_a_circle(self):
        pts = [finite(np.cos(t), np.sin(t), 0.0) for t in np.linspace(0.0, 5.0, 7)]
        assert span(lifted(3, *pts)).k == 1

    def test_generic_points_fill_up(self, rng):
        for k in range(4):
            assert span([lift(p, 3) for p in random_finite_points(3, k + 2, rng)]).k == k

    def test_collinear_points_span_a_circle_through_infinity(self):
        line = span(lifted(2, finite(0, 0), finite(1, 1), finite(3, 3)))
        assert line.k == 1
        assert contains(line, lift(INF, 2))

    def test_two_points_span_a_point_pair(self):
        pair = span(lifted(2, finite(0, 0), INF))
        assert pair.k == 0
        assert pair.rank_gap > 0.5

    def test_single_point(self):
        with pytest.raises(GeomKitTooFewPointsError) as exc_info:
            span(lifted(2, finite(1, 2), finite(1, 2)))
        assert exc_info.value.rank == 1

    def test_empty_and_mixed(self):
        with pytest.raises(GeomKitInputError, match="at least one point"):
            span([])
        with pytest.raises(GeomKitInputError, match="mixed dimensions"):
            span([lift(finite(0, 0), 2), lift(finite(0, 0, 0), 3)])

    def test_spacelike_span(self):
        """A span with no null direction is not a sphere."""
        with pytest.raises(GeomKitIllConditionedError):
            sphere_from_subspace(np.eye(4)[:, :2])

    def test_tangent_span(self):
        """A span touching the light cone in one ray is not a sphere."""
        basis = np.column_stack([lift(finite(0, 0), 2).vector, [1.0, 0.0, 0.0, 0.0]])
        with pytest.raises(GeomKitIllConditionedError):
            sphere_from_subspace(basis)

    def test_ksphere_validates_basis(self):
        with pytest.raises(GeomKitInputError, match="columns"):
            KSphere(k=1, basis=np.eye(4)[:, :2])
        with pytest.raises(GeomKitInputError, match="out of range"):
            KSphere(k=3, basis=np.eye(4)[:, :1].repeat(5, axis=1))


class TestMembership:
    """Test contains, residuals and incidences."""

    def test_unit_circle(self):
        circle = euclidean_sphere([0.0, 0.0], 1.0)
        assert circle.k == 1
        assert contains(circle, lift(finite(1, 0), 2))
        assert contains(circle, lift(finite(np.sqrt(0.5), -np.sqrt(0.5)), 2))
        assert not contains(circle, lift(finite(2, 0), 2))
        assert not contains(circle, lift(INF, 2))

    def test_hyperplane_contains_infinity(self):
        plane = affine_sphere([0.0, 0.0, 2.0], 2.0)
        assert plane.k == 2
        assert contains(plane, lift(INF, 3))
        assert contains(plane, lift(finite(5, -7, 1), 3))
        assert not contains(plane, lift(finite(0, 0, 0), 3))

    def test_residual(self):
        circle = euclidean_sphere([0.0, 0.0], 1.0)
        assert membership_residual(circle, lift(finite(0, 1), 2)) < 1e-14
        assert membership_residual(circle, lift(finite(0, 0), 2)) > 0.1

    def test_dimension_mismatch(self):
        with pytest.raises(GeomKitInputError, match="tested against"):
            contains(euclidean_sphere([0.0, 0.0], 1.0), lift(finite(1, 0, 0), 3))

    def test_incident_indices(self):
        circle = euclidean_sphere([1.0, 1.0], 1.0)
        rays = lifted(2, finite(2, 1), finite(3, 3), finite(1, 0), INF, finite(0, 1))
        assert incident_indices(circle, rays) == [0, 2, 4]
        assert incident_indices(circle, []) == []

    def test_sphere_equals(self):
        spanned = span(lifted(2, finite(1, 0), finite(0, 1), finite(-1, 0)))
        assert sphere_equals(spanned, euclidean_sphere([0.0, 0.0], 1.0))
        assert not sphere_equals(spanned, euclidean_sphere([0.0, 0.0], 2.0))
        assert not sphere_equals(spanned, span(lifted(2, finite(1, 0), finite(0, 1))))


class TestEuclideanShapes:
    """Test the Euclidean constructors and their inverse."""

    def test_center_and_radius(self):
        center, radius = center_and_radius(euclidean_sphere([1.0, 2.0, 0.0], 3.0))
        assert center == pytest.approx([1.0, 2.0, 0.0], abs=1e-8)
        assert radius == pytest.approx(3.0, abs=1e-8)

    def test_center_and_radius_of_circle_in_space(self):
        circle = span(lifted(3, finite(2, 0, 1), finite(0, 2, 1), finite(-2, 0, 1)))
        center, radius = center_and_radius(circle)
        assert center == pytest.approx([0.0, 0.0, 1.0], abs=1e-8)
        assert radius == pytest.approx(2.0, abs=1e-8)

    def test_flat_sphere_has_no_centre(self):
        assert center_and_radius(affine_sphere([1.0, 0.0], 0.5)) is None

    def test_invalid_arguments(self):
        with pytest.raises(GeomKitInputError, match="radius must be positive"):
            euclidean_sphere([0.0, 0.0], -1.0)
        with pytest.raises(GeomKitInputError, match="nonzero"):
            affine_sphere([0.0, 0.0], 1.0)


class TestIntersect:
    """Test sphere intersections."""

    def test_tangent_circles(self):
        meet = intersect(euclidean_sphere([0.0, 0.0], 1.0), euclidean_sphere([2.0, 0.0], 1.0))
        assert isinstance(meet, SinglePoint)
        assert project(meet.point).array == pytest.approx([1.0, 0.0], abs=1e-7)

    def test_overlapping_circles(self):
        meet = intersect(euclidean_sphere([0.0, 0.0], 1.0), euclidean_sphere([1.0, 0.0], 1.0))
        assert isinstance(meet, SphereIntersection)
        assert meet.sphere.k == 0
        for ray in sample_sphere(meet.sphere, 6, seed=3):
            x, y = project(ray).array
            assert x == pytest.approx(0.5, abs=1e-9)
            assert abs(y) == pytest.approx(np.sqrt(3.0) / 2.0, abs=1e-9)

    def test_disjoint_circles(self):
        assert isinstance(intersect(euclidean_sphere([0.0, 0.0], 1.0), euclidean_sphere([5.0, 0.0], 1.0)), Empty)

    def test_nested_circles(self):
        assert isinstance(intersect(euclidean_sphere([0.0, 0.0], 1.0), euclidean_sphere([0.0, 0.0], 3.0)), Empty)

    def test_two_spheres_meet_in_a_circle(self):
        meet = intersect(euclidean_sphere([0.0, 0.0, 0.0], 1.0), euclidean_sphere([1.0, 0.0, 0.0], 1.0))
        assert isinstance(meet, SphereIntersection)
        assert meet.sphere.k == 1
        center, radius = center_and_radius(meet.sphere)
        assert center == pytest.approx([0.5, 0.0, 0.0], abs=1e-8)
        assert radius == pytest.approx(np.sqrt(0.75), abs=1e-8)

    def test_sphere_with_itself(self):
        s = euclidean_sphere([0.0, 1.0, 0.0], 2.0)
        meet = intersect(s, s)
        assert isinstance(meet, SphereIntersection)
        assert sphere_equals(meet.sphere, s)

    def test_dimension_mismatch(self):
        with pytest.raises(GeomKitInputError, match="cannot intersect"):
            intersect(euclidean_sphere([0.0, 0.0], 1.0), euclidean_sphere([0.0, 0.0, 0.0], 1.0))

    def test_dimension_bounds_for_spheres_sharing_two_points(self, rng):
        """A k-sphere and an m-sphere sharing two points meet in dimension max(0, k+m-n)..min(k, m)."""
        violations = []
        for trial in range(500):
            n = int(rng.integers(2, 7))
            k, m = (int(d) for d in rng.integers(0, n + 1, size=2))
            shared = random_finite_points(n, 2, rng)
            a = span([lift(p, n) for p in shared + random_finite_points(n, k, rng)])
            b = span([lift(p, n) for p in shared + random_finite_points(n, m, rng)])
            meet = intersect(a, b)
            if not isinstance(meet, SphereIntersection):
                violations.append((trial, n, k, m, meet))
                continue
            if not max(0, k + m - n) <= meet.sphere.k <= min(k, m):
                violations.append((trial, n, k, m, meet.sphere.k))
            if not all(contains(meet.sphere, lift(p, n)) for p in shared):
                violations.append((trial, n, k, m, "shared point lost"))
        assert violations == []

    def test_circle_through_two_outside_points_meets_sphere_at_most_once(self, rng):
        """If x1, x2 raise the span of S_k by two dimensions, no circle through them meets S_k twice."""
        violations = []
        for trial in range(200):
            n = int(rng.integers(3, 6))
            k = int(rng.integers(0, n - 1))
            s_k = random_sphere(n, k, rng)
            x1, x2 = (lift(p, n) for p in random_finite_points(n, 2, rng))
            basis = np.column_stack([s_k.basis, x1.vector, x2.vector])
            if np.linalg.matrix_rank(basis) != k + 4:
                continue
            for _ in range(10):
                y = lift(random_finite_points(n, 1, rng)[0], n)
                circle = span([x1, x2, y])
                if isinstance(intersect(circle, s_k), SphereIntersection):
                    violations.append(trial)
        assert violations == []

    def test_circle_through_two_outside_points_and_a_sphere_point_touches_once(self, rng):
        """A circle through x1, x2 and a point y of S_k meets S_k in y alone."""
        violations = []
        checked = 0
        for trial in range(200):
            n = int(rng.integers(3, 6))
            k = int(rng.integers(0, n - 1))
            s_k = random_sphere(n, k, rng)
            x1, x2 = (lift(p, n) for p in random_finite_points(n, 2, rng))
            basis = np.column_stack([s_k.basis, x1.vector, x2.vector])
            if np.linalg.matrix_rank(basis) != k + 4:
                continue
            for draw in range(5):
                (y,) = sample_sphere(s_k, 1, seed=trial * 5 + draw)
                meet = intersect(span([x1, x2, y]), s_k)
                checked += 1
                if not isinstance(meet, SinglePoint) or point_distance(meet.point, y) > 1e-7:
                    violations.append((trial, n, k, meet))
        assert checked > 0
        assert violations == []


class TestSampling:
    """Test sample_sphere and random_sphere."""

    def test_samples_lie_on_sphere(self, rng):
        sphere = random_sphere(4, 2, rng)
        samples = sample_sphere(sphere, 20, seed=5)
        assert all(contains(sphere, p) for p in samples)

    def test_deterministic_in_seed(self):
        sphere = euclidean_sphere([0.0, 0.0, 0.0], 1.0)
        first = [p.vector.tolist() for p in sample_sphere(sphere, 4, seed=9)]
        again = [p.vector.tolist() for p in sample_sphere(sphere, 4, seed=9)]
        other = [p.vector.tolist() for p in sample_sphere(sphere, 4, seed=10)]
        assert first == again
        assert first != other

    def test_point_pair_has_two_samples(self):
        pair = span(lifted(2, finite(0, 0), finite(1, 1)))
        projected = {tuple(np.round(project(p).array, 9)) for p in sample_sphere(pair, 12, seed=0)}
        assert projected == {(0.0, 0.0), (1.0, 1.0)}

    def test_point_pair_samples_alternate(self, rng):
        """Every seed yields both points of a 0-sphere once two samples are drawn."""
        for seed in range(200):
            pair = random_sphere(3, 0, rng)
            for count in (2, 3, 4):
                samples = sample_sphere(pair, count, seed=seed)
                assert all(contains(pair, p) for p in samples)
                assert not samples[0].equals(samples[1])
                assert all(samples[i].equals(samples[i + 2]) for i in range(count - 2))

    def test_bad_count(self):
        with pytest.raises(GeomKitInputError, match="sample count"):
            sample_sphere(euclidean_sphere([0.0, 0.0], 1.0), 0, seed=0)

    def test_random_sphere_dimension(self, rng):
        for k in range(5):
            assert random_sphere(4, k, rng).k == k
        with pytest.raises(GeomKitInputError, match="out of range"):
            random_sphere(2, 3, rng)
