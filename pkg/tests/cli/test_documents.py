"""Tests for the versioned JSON documents."""

import json

import numpy as np
import pytest

from geomkit_lib.analysis.generators import generate_moebius_table
from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.any.types import PositionMode
from geomkit_lib.cli.documents import (
    GPReportDocument,
    KSphereDocument,
    MapTableDocument,
    MoebiusMapDocument,
    PointSetDocument,
    SphereModel,
    dump_document,
    number,
    read_document,
    write_document,
)
from geomkit_lib.geometry.points import ExtendedPoint, lift
from geomkit_lib.geometry.spheres import euclidean_sphere
from geomkit_lib.moebius.maps import from_inversion
from geomkit_lib.position.checks import check_general_position
from geomkit_lib.position.point_sets import PointSet
from tests.conftest import finite

INF = ExtendedPoint.infinity()


def write_json(path, payload) -> None:
    path.write_text(json.dumps(payload), encoding="utf-8")


class TestNumbers:
    """Test number formatting."""

    @pytest.mark.parametrize("x", [0.1, 1 / 3, -2.5e-300, 123456789.123456789])
    def test_seventeen_digits_are_exact(self, x):
        assert number(x) == x


class TestPointSetDocument:
    """Test point-set documents."""

    def test_infinity_token(self):
        document = PointSetDocument.of([finite(1.0, 2.0), INF], 2)
        payload = json.loads(dump_document(document))
        assert payload == {"version": "1", "n": 2, "kind": "point-set", "points": [[1.0, 2.0], "inf"]}
        assert document.to_points() == [finite(1.0, 2.0), INF]

    def test_read_back(self, tmp_path):
        path = tmp_path / "points.json"
        write_document(PointSetDocument.of([finite(0.1, 0.2, 0.3), INF], 3), path)
        document = read_document(path, PointSetDocument)
        assert document.n == 3
        assert len(document.to_point_set()) == 2

    def test_wrong_dimension_names_the_point(self):
        document = PointSetDocument(n=2, points=[[0.0, 0.0], [1.0, 2.0, 3.0]])
        with pytest.raises(GeomKitInputError, match="points\\[1\\]"):
            document.to_points()

    def test_write_to_stdout_returns_text(self):
        text = write_document(PointSetDocument.of([INF], 1), None)
        assert text.endswith("\n")
        assert json.loads(text)["points"] == ["inf"]


class TestReadDocument:
    """Test validation errors surfaced by read_document."""

    def test_extra_field_rejected(self, tmp_path):
        path = tmp_path / "points.json"
        write_json(path, {"version": "1", "n": 2, "kind": "point-set", "points": [], "colour": "red"})
        with pytest.raises(GeomKitInputError, match="colour"):
            read_document(path, PointSetDocument)

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "points.json"
        write_json(path, {"version": "2", "n": 2, "kind": "point-set", "points": []})
        with pytest.raises(GeomKitInputError, match="version"):
            read_document(path, PointSetDocument)

    def test_wrong_kind(self, tmp_path):
        path = tmp_path / "points.json"
        write_json(path, {"version": "1", "n": 2, "kind": "map-table", "pairs": []})
        with pytest.raises(GeomKitInputError, match="kind"):
            read_document(path, PointSetDocument)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "points.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(GeomKitInputError, match="points.json"):
            read_document(path, PointSetDocument)

    def test_missing_file(self, tmp_path):
        with pytest.raises(GeomKitInputError, match="cannot read"):
            read_document(tmp_path / "absent.json", PointSetDocument)

    def test_dimension_must_be_positive(self, tmp_path):
        path = tmp_path / "points.json"
        write_json(path, {"version": "1", "n": 0, "kind": "point-set", "points": []})
        with pytest.raises(GeomKitInputError, match="n:"):
            read_document(path, PointSetDocument)


class TestMapDocuments:
    """Test map-table and Möbius map documents."""

    def test_table_round_trip(self, tmp_path):
        table, _ = generate_moebius_table(3, 20, seed=0)
        path = tmp_path / "table.json"
        write_document(MapTableDocument.of(table), path)
        again = read_document(path, MapTableDocument).to_table()
        assert again.pairs == table.pairs

    def test_table_pair_location(self):
        pairs = [{"domain": [0.0, 0.0], "image": "inf"}, {"domain": [1.0], "image": "inf"}]
        document = MapTableDocument(n=2, pairs=pairs)
        with pytest.raises(GeomKitInputError, match="pairs\\[1\\]"):
            document.to_table()

    def test_map_round_trip(self):
        m = from_inversion([0.5, -0.25], 2.0)
        document = MoebiusMapDocument.of(m)
        assert document.n == 2
        assert document.provenance == list(m.provenance)
        assert np.array_equal(document.to_map().matrix, m.matrix)

    def test_map_size_checked(self):
        document = MoebiusMapDocument(n=2, matrix=np.eye(3).tolist())
        with pytest.raises(GeomKitInputError, match="4 x 4 for n=2"):
            document.to_map()

    def test_map_must_be_square(self, tmp_path):
        path = tmp_path / "map.json"
        write_json(path, {"version": "1", "n": 1, "kind": "moebius-map", "matrix": [[1.0, 0.0], [0.0]]})
        with pytest.raises(GeomKitInputError, match="matrix must be square"):
            read_document(path, MoebiusMapDocument)


class TestSphereModel:
    """Test k-sphere serialization."""

    def test_round_trip(self):
        sphere = euclidean_sphere([0.0, 0.0], 1.0)
        document = KSphereDocument(n=2, sphere=SphereModel.of(sphere))
        again = document.sphere.to_sphere(2)
        assert again.k == 1
        assert np.allclose(again.basis @ again.basis.T, sphere.basis @ sphere.basis.T)

    def test_shape_checked(self):
        model = SphereModel(k=1, basis=np.eye(4)[:, :2].tolist())
        with pytest.raises(GeomKitInputError, match="4 x 3"):
            model.to_sphere(2)

    def test_k_checked(self):
        a, b = (lift(p, 2).vector for p in (finite(0, 0), finite(1, 1)))
        model = SphereModel(k=1, basis=np.column_stack([a, b, b]).tolist())
        with pytest.raises(GeomKitInputError, match="document says k=1"):
            model.to_sphere(2)


class TestReportDocuments:
    """Test report serialization."""

    def test_failing_gp_report(self):
        points = PointSet.from_points([finite(1, 0), finite(0, 1), finite(-1, 0), finite(0, -1), finite(0, 0)], 2)
        document = GPReportDocument.of(check_general_position(points, PositionMode.CIRCULAR))
        assert document.mode == "circular"
        assert not document.verdict
        assert document.witness.excluded == [4]
        assert document.witness.sphere.k == 1
        assert json.loads(dump_document(document))["kind"] == "gp-report"
