"""
Report values produced by the oracle analysis.

All reports are frozen dataclasses; the CLI serializes them through the document models
in ``geomkit_lib.cli.documents``.
"""

from dataclasses import dataclass, field

from geomkit_lib.any.exceptions import GeomKitInputError
from geomkit_lib.geometry.points import ExtendedPoint
from geomkit_lib.geometry.spheres import KSphere
from geomkit_lib.moebius.fitting import RestrictedFit
from geomkit_lib.moebius.maps import MoebiusMap
from geomkit_lib.position.checks import GPReport

# Image dimension recorded when every sampled image is the same point.
SINGLE_POINT_DIM = -1


@dataclass(frozen=True, eq=False)
class SphereOutcome:
    """One tested sphere: its domain samples, their images and the image span dimension."""

    index: int
    sphere: KSphere
    image_dim: int
    domain_points: tuple[ExtendedPoint, ...]
    image_points: tuple[ExtendedPoint, ...]


@dataclass(frozen=True, eq=False)
class WcpReport:
    """
    Outcome of a preservation check over a finite family of spheres.

    ``target_dim`` is 1 for circles, n-1 for weak sphere preservation and k for the
    k-sphere collapse check. ``image_dims`` holds one entry per input sphere (``None`` when
    the oracle had no data for it). The verdict only certifies the tested spheres.
    """

    n: int
    target_dim: int
    spheres_tested: int
    spheres_skipped: int
    verdict: bool
    failures: tuple[SphereOutcome, ...]
    image_dims: tuple[int | None, ...]
    seed: int
    scope: str = ""

    def __post_init__(self) -> None:
        if self.verdict == bool(self.failures):
            raise GeomKitInputError("preservation verdict must be false exactly when failures are present")

    @property
    def circles_tested(self) -> int:
        return self.spheres_tested


@dataclass(frozen=True, eq=False)
class S2Witness:
    """A 2-sphere of the domain whose table images are in circular general position."""

    sphere: KSphere
    indices: tuple[int, ...]
    image_gp: GPReport


@dataclass(frozen=True, eq=False)
class HypothesesReport:
    """
    Both data hypotheses of recovery, checked on a table.

    ``spherical_gp`` covers the deduplicated image sample; ``witness`` is the first
    2-sphere found whose images are in circular general position (``None`` when the
    search was exhausted). ``cap_hit`` is set when the colexicographic anchor enumeration
    reached its cap and random anchors were drawn instead.
    """

    spherical_gp: GPReport
    witness: S2Witness | None
    anchors_examined: int
    candidates_tested: int
    cap_hit: bool

    @property
    def passed(self) -> bool:
        return self.spherical_gp.verdict and self.witness is not None

    @property
    def failed_hypothesis(self) -> str | None:
        if not self.spherical_gp.verdict:
            return SPHERICAL_GP_HYPOTHESIS
        if self.witness is None:
            return S2_WITNESS_HYPOTHESIS
        return None


SPHERICAL_GP_HYPOTHESIS = "image in spherical general position"
S2_WITNESS_HYPOTHESIS = "2-sphere with image in circular general position"
FIVE_POINT_HYPOTHESIS = "distinct image points on the 2-sphere"
DOMAIN_S2_HYPOTHESIS = "domain on a single 2-sphere"
CHAIN_HYPOTHESIS = "chain extension adds at least two new image points"
DIRECT_SUBSET_HYPOTHESIS = "well-conditioned (n+3)-subset of the table"


@dataclass(frozen=True, eq=False)
class Recovered:
    """
    A Möbius map reproducing every table pair within εverify.

    ``chain`` lists the sphere dimensions the chain strategy passed through (empty for
    the direct strategy); ``restricted`` is the intrinsic fit for the five-point routine.
    """

    moebius: MoebiusMap
    max_residual: float
    strategy: str
    pairs_used: tuple[int, ...] = ()
    chain: tuple[int, ...] = ()
    restricted: RestrictedFit | None = None

    verdict: bool = field(default=True, init=False)


@dataclass(frozen=True, eq=False)
class HypothesesNotSatisfied:
    """The table does not meet a hypothesis; ``witness`` is a sphere demonstrating it, if any."""

    hypothesis: str
    reason: str
    witness: KSphere | None = None
    report: HypothesesReport | None = None

    verdict: bool = field(default=False, init=False)


@dataclass(frozen=True, eq=False)
class Inconsistent:
    """No Möbius map fits; ``witness_index`` is the table pair with the largest residual."""

    witness_index: int | None
    residual: float | None
    reason: str

    verdict: bool = field(default=False, init=False)


RecoveryResult = Recovered | HypothesesNotSatisfied | Inconsistent


@dataclass(frozen=True, eq=False)
class WspReductionReport:
    """
    Whether weak sphere preservation yields k-sphere preservation for a given oracle.

    ``applies`` requires a passing weak sphere preservation check and an image sample
    spanning all of S^n; ``holds`` is true when every k-sphere collapse check passed.
    """

    wsp: WcpReport
    image_dim: int
    collapse: tuple[WcpReport, ...]

    @property
    def applies(self) -> bool:
        return self.wsp.verdict and self.image_dim == self.wsp.n

    @property
    def holds(self) -> bool:
        return all(r.verdict for r in self.collapse)
