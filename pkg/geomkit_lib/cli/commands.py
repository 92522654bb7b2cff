"""
Subcommand implementations.

Each ``cmd_*`` function reads its input documents, runs the library operation and returns
the output document together with the exit code (0 success, 1 failing report). Input and
library contract errors propagate as ``GeomKitError`` and are mapped to exit 2 by
``geomkit_lib.cli.main``.
"""

from dataclasses import dataclass
from pathlib import Path

from partsnap_logger.logging import psnap_get_logger

from geomkit_lib.analysis.checks import check_table
from geomkit_lib.analysis.generators import (
    generate_finite_image_table,
    generate_gp_set,
    generate_moebius_table,
)
from geomkit_lib.analysis.recovery import recover_moebius
from geomkit_lib.analysis.reports import Recovered
from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.any.types import CheckMode, GeneratorKind, PositionMode, RecoveryStrategy
from geomkit_lib.cli.documents import (
    Document,
    GPReportDocument,
    MapTableDocument,
    MoebiusMapDocument,
    PointSetDocument,
    PreservationReportDocument,
    RecoveryReportDocument,
    read_document,
)
from geomkit_lib.config.schemas import AnalysisSettings
from geomkit_lib.moebius.maps import MoebiusMap, apply
from geomkit_lib.position.checks import check_general_position

LOGGER = psnap_get_logger("geomkit_lib.cli.commands")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

DEFAULT_TABLE_SIZE = 40
DEFAULT_CHECK_SPHERES = 20


@dataclass(frozen=True)
class CommandResult:
    """Output document and exit code of one subcommand."""

    document: Document
    exit_code: int


def _require_n(document: Document, n: int | None, path: Path) -> None:
    if n is not None and document.n != n:
        raise GeomKitInputError(f"{path}: document has n={document.n} but --n {n} was given")


def cmd_gp_check(path: Path, mode: PositionMode, settings: AnalysisSettings, n: int | None = None) -> CommandResult:
    """Check circular or spherical general position of a point set."""
    document = read_document(path, PointSetDocument)
    _require_n(document, n, path)
    report = check_general_position(document.to_point_set(settings.tolerances), mode, settings.tolerances)
    return CommandResult(GPReportDocument.of(report), EXIT_OK if report.verdict else EXIT_FAILED)


def cmd_check(
    path: Path,
    mode: CheckMode,
    settings: AnalysisSettings,
    circles: int = DEFAULT_CHECK_SPHERES,
    samples: int | None = None,
    n: int | None = None,
) -> CommandResult:
    """
    Weak circle (``wcp``) or weak sphere (``wsp``) preservation check of a map table.

    ``circles`` bounds the number of spheres tested, ``samples`` is the minimum number of
    table points a tested sphere must carry.
    """
    document = read_document(path, MapTableDocument)
    _require_n(document, n, path)
    table = document.to_table(settings.tolerances)
    report = check_table(table, mode, circles, samples, settings.seed, settings.tolerances)
    return CommandResult(
        PreservationReportDocument.of(report, mode.value), EXIT_OK if report.verdict else EXIT_FAILED
    )


def cmd_recover(
    path: Path, strategy: RecoveryStrategy, settings: AnalysisSettings, n: int | None = None
) -> CommandResult:
    """
    Recover the Möbius map behind a table.

    Writes the map on success and a recovery report naming the failed hypothesis (or the
    inconsistent pair) otherwise.
    """
    document = read_document(path, MapTableDocument)
    _require_n(document, n, path)
    table = document.to_table(settings.tolerances)
    result = recover_moebius(table, strategy, settings.tolerances, settings, settings.seed)
    if isinstance(result, Recovered):
        m = MoebiusMap(
            result.moebius.matrix,
            (*result.moebius.provenance, f"recovered({strategy.value}, max_residual={result.max_residual:.3g})"),
        )
        return CommandResult(MoebiusMapDocument.of(m), EXIT_OK)
    LOGGER.info(f"recovery failed: {result.reason}")
    return CommandResult(RecoveryReportDocument.of(result, table.n, strategy.value), EXIT_FAILED)


def cmd_apply(map_path: Path, points_path: Path, settings: AnalysisSettings, n: int | None = None) -> CommandResult:
    """Apply a Möbius map to every point of a point set, keeping input order."""
    map_document = read_document(map_path, MoebiusMapDocument)
    points_document = read_document(points_path, PointSetDocument)
    _require_n(map_document, n, map_path)
    if points_document.n != map_document.n:
        raise GeomKitInputError(
            f"map acts on S^{map_document.n} but {points_path} holds points of S^{points_document.n}"
        )
    m = map_document.to_map()
    images = [apply(m, p, settings.tolerances) for p in points_document.to_points()]
    return CommandResult(PointSetDocument.of(images, m.n), EXIT_OK)


def cmd_generate(
    kind: GeneratorKind, n: int, settings: AnalysisSettings, count: int | None = None, images: int = 3
) -> CommandResult:
    """
    Generate a sample artifact, deterministic in ``settings.seed``.

    Raises
    ------
        GeomKitInputError: For unsatisfiable requests (e.g. a gp-set smaller than n+3)

    """
    if n < 1:
        raise GeomKitInputError(f"--n must be >= 1, got {n}")
    seed = settings.seed
    LOGGER.info(f"Generating {kind.display_name} (n={n}, seed={seed})")
    if kind is GeneratorKind.GP_SET:
        points = generate_gp_set(n, count if count is not None else n + 3, seed, tol=settings.tolerances)
        return CommandResult(PointSetDocument.of(points.extended_points(), n), EXIT_OK)
    size = count if count is not None else DEFAULT_TABLE_SIZE
    if kind is GeneratorKind.MOEBIUS_TABLE:
        table, _ = generate_moebius_table(n, size, seed)
    else:
        table = generate_finite_image_table(n, size, seed, images)
    return CommandResult(MapTableDocument.of(table), EXIT_OK)
