"""
Versioned JSON documents for every artifact the CLI reads or writes.

Every document carries ``version: "1"``, a ``kind`` tag and the ambient dimension ``n``.
Unknown fields are rejected (pydantic ``extra="forbid"``), and validation errors carry
the field location. Points at infinity are written as the string ``"inf"``; numbers are
written with up to 17 significant digits so every double round-trips exactly.
"""

from pathlib import Path
from typing import Annotated, Literal, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from geomkit_lib.analysis.oracles import MapTable
from geomkit_lib.analysis.reports import (
    HypothesesNotSatisfied,
    Inconsistent,
    Recovered,
    RecoveryResult,
    SphereOutcome,
    WcpReport,
)
from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.config.schemas import Tolerances
from geomkit_lib.geometry.points import ExtendedPoint
from geomkit_lib.geometry.spheres import KSphere, sphere_from_subspace
from geomkit_lib.moebius.maps import MoebiusMap
from geomkit_lib.position.checks import GPReport
from geomkit_lib.position.point_sets import PointSet

FORMAT_VERSION = "1"
INFINITY_TOKEN = "inf"

PointValue = list[float] | Literal["inf"]


def number(x: float) -> float:
    """``x`` rounded to 17 significant digits (exact for IEEE doubles)."""
    return float(f"{x:.17g}")


def point_value(p: ExtendedPoint) -> PointValue:
    if p.coords is None:
        return INFINITY_TOKEN
    return [number(c) for c in p.coords]


def to_point(value: PointValue, n: int) -> ExtendedPoint:
    if value == INFINITY_TOKEN:
        return ExtendedPoint.infinity()
    p = ExtendedPoint.finite(value)
    p.check_dim(n)
    return p


def _matrix(m: np.ndarray) -> list[list[float]]:
    return [[number(float(x)) for x in row] for row in m]


class Document(BaseModel):
    """Common envelope."""

    model_config = ConfigDict(extra="forbid")

    version: Literal["1"] = FORMAT_VERSION
    n: Annotated[int, Field(ge=1)]


class SphereModel(BaseModel):
    """A k-sphere as k and an (n+2) x (k+2) basis, row by row."""

    model_config = ConfigDict(extra="forbid")

    k: Annotated[int, Field(ge=0)]
    basis: list[list[float]]

    @classmethod
    def of(cls, sphere: KSphere) -> "SphereModel":
        return cls(k=sphere.k, basis=_matrix(sphere.basis))

    def to_sphere(self, n: int, tol: Tolerances | None = None) -> KSphere:
        basis = np.asarray(self.basis, dtype=np.float64)
        if basis.shape != (n + 2, self.k + 2):
            raise GeomKitInputError(f"sphere basis must be {n + 2} x {self.k + 2}, got {basis.shape}")
        sphere = sphere_from_subspace(basis, tol)
        if sphere.k != self.k:
            raise GeomKitInputError(f"basis spans a {sphere.k}-sphere, document says k={self.k}")
        return sphere


class KSphereDocument(Document):
    kind: Literal["k-sphere"] = "k-sphere"
    sphere: SphereModel


class PointSetDocument(Document):
    kind: Literal["point-set"] = "point-set"
    points: list[PointValue]

    @classmethod
    def of(cls, points: list[ExtendedPoint], n: int) -> "PointSetDocument":
        return cls(n=n, points=[point_value(p) for p in points])

    def to_points(self) -> list[ExtendedPoint]:
        out = []
        for i, value in enumerate(self.points):
            try:
                out.append(to_point(value, self.n))
            except GeomKitInputError as e:
                raise GeomKitInputError(f"points[{i}]: {e}") from e
        return out

    def to_point_set(self, tol: Tolerances | None = None) -> PointSet:
        return PointSet.from_points(self.to_points(), self.n, tol)


class PairModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    domain: PointValue
    image: PointValue


class MapTableDocument(Document):
    kind: Literal["map-table"] = "map-table"
    pairs: list[PairModel]

    @classmethod
    def of(cls, table: MapTable) -> "MapTableDocument":
        return cls(n=table.n, pairs=[PairModel(domain=point_value(x), image=point_value(y)) for x, y in table.pairs])

    def to_table(self, tol: Tolerances | None = None) -> MapTable:
        pairs = []
        for i, pair in enumerate(self.pairs):
            try:
                pairs.append((to_point(pair.domain, self.n), to_point(pair.image, self.n)))
            except GeomKitInputError as e:
                raise GeomKitInputError(f"pairs[{i}]: {e}") from e
        return MapTable.from_pairs(pairs, self.n, tol)


class MoebiusMapDocument(Document):
    kind: Literal["moebius-map"] = "moebius-map"
    matrix: list[list[float]]
    provenance: list[str] = []

    @field_validator("matrix")
    @classmethod
    def validate_square(cls, value: list[list[float]]) -> list[list[float]]:
        """Validate that the matrix is square."""
        if any(len(row) != len(value) for row in value):
            raise ValueError("matrix must be square")
        return value

    @classmethod
    def of(cls, m: MoebiusMap) -> "MoebiusMapDocument":
        return cls(n=m.n, matrix=_matrix(m.matrix), provenance=list(m.provenance))

    def to_map(self) -> MoebiusMap:
        if len(self.matrix) != self.n + 2:
            raise GeomKitInputError(f"matrix must be {self.n + 2} x {self.n + 2} for n={self.n}")
        return MoebiusMap(np.asarray(self.matrix, dtype=np.float64), tuple(self.provenance))


class WitnessModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sphere: SphereModel
    excluded: list[int]


class GPReportDocument(Document):
    kind: Literal["gp-report"] = "gp-report"
    mode: Literal["circular", "spherical"]
    verdict: bool
    size: int
    cardinality_ok: bool
    rank_gap: float
    note: str
    witness: WitnessModel | None = None

    @classmethod
    def of(cls, report: GPReport) -> "GPReportDocument":
        witness = None
        if report.witness is not None:
            witness = WitnessModel(sphere=SphereModel.of(report.witness.sphere), excluded=list(report.witness.excluded))
        return cls(
            n=report.n,
            mode=report.mode.value,
            verdict=report.verdict,
            size=report.size,
            cardinality_ok=report.cardinality_ok,
            rank_gap=number(report.rank_gap),
            note=report.note,
            witness=witness,
        )


class FailureModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    index: int
    image_dim: int
    sphere: SphereModel
    domain_points: list[PointValue]
    image_points: list[PointValue]

    @classmethod
    def of(cls, outcome: SphereOutcome) -> "FailureModel":
        return cls(
            index=outcome.index,
            image_dim=outcome.image_dim,
            sphere=SphereModel.of(outcome.sphere),
            domain_points=[point_value(p) for p in outcome.domain_points],
            image_points=[point_value(p) for p in outcome.image_points],
        )


class PreservationReportDocument(Document):
    kind: Literal["preservation-report"] = "preservation-report"
    mode: Literal["wcp", "wsp"]
    target_dim: int
    verdict: bool
    spheres_tested: int
    spheres_skipped: int
    image_dims: list[int | None]
    seed: int
    scope: str
    failures: list[FailureModel]

    @classmethod
    def of(cls, report: WcpReport, mode: str) -> "PreservationReportDocument":
        return cls(
            n=report.n,
            mode=mode,
            target_dim=report.target_dim,
            verdict=report.verdict,
            spheres_tested=report.spheres_tested,
            spheres_skipped=report.spheres_skipped,
            image_dims=list(report.image_dims),
            seed=report.seed,
            scope=report.scope,
            failures=[FailureModel.of(o) for o in report.failures],
        )


class RecoveryReportDocument(Document):
    kind: Literal["recovery-report"] = "recovery-report"
    status: Literal["recovered", "hypotheses-not-satisfied", "inconsistent"]
    strategy: str
    max_residual: float | None = None
    hypothesis: str | None = None
    reason: str | None = None
    witness_index: int | None = None
    residual: float | None = None
    witness: SphereModel | None = None

    @classmethod
    def of(cls, result: RecoveryResult, n: int, strategy: str) -> "RecoveryReportDocument":
        if isinstance(result, Recovered):
            return cls(n=n, status="recovered", strategy=strategy, max_residual=number(result.max_residual))
        if isinstance(result, HypothesesNotSatisfied):
            return cls(
                n=n,
                status="hypotheses-not-satisfied",
                strategy=strategy,
                hypothesis=result.hypothesis,
                reason=result.reason,
                witness=SphereModel.of(result.witness) if result.witness is not None else None,
            )
        assert isinstance(result, Inconsistent)
        return cls(
            n=n,
            status="inconsistent",
            strategy=strategy,
            reason=result.reason,
            witness_index=result.witness_index,
            residual=number(result.residual) if result.residual is not None else None,
        )


D = TypeVar("D", bound=Document)


def read_document(path: Path, model: type[D]) -> D:
    """
    Parse and validate a UTF-8 JSON document.

    Raises
    ------
        GeomKitInputError: On unreadable files, malformed JSON or schema violations (with locations)

    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GeomKitInputError(f"cannot read {path}: {e}") from e
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise GeomKitInputError(f"{path}: {details}") from e


def dump_document(document: Document) -> str:
    return document.model_dump_json(indent=2) + "\n"


def write_document(document: Document, path: Path | None) -> str:
    """Write ``document`` to ``path`` (or return it for stdout when ``path`` is None)."""
    text = dump_document(document)
    if path is not None:
        path.write_text(text, encoding="utf-8")
    return text
