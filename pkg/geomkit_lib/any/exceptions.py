"""
GeomKit exception classes.

This module defines custom exceptions for GeomKit so that geometric failures never
masquerade as built-in Python errors and callers can branch on the exact failure.

All GeomKit exceptions follow the naming convention GeomKit*Error.
"""


class GeomKitError(Exception):
    """
    Base exception for all GeomKit errors.

    All GeomKit exceptions inherit from this, allowing users to catch every
    library-specific failure with a single except clause while not catching
    unrelated Python errors.
    """

    pass


class GeomKitDegenerateRayError(GeomKitError):
    """
    Raised when a vector that should be a null ray is not.

    Example:
    -------
        Projecting a timelike vector:
        >>> project(SpherePoint(np.array([0.0, 0.0, 0.0, 1.0])))
        GeomKitDegenerateRayError: vector is not null (|Q| = 1.0 > 1e-09)...

    """

    pass


class GeomKitTooFewPointsError(GeomKitError):
    """Raised when a point list spans less than a 0-sphere (numerical rank < 2)."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class GeomKitIllConditionedError(GeomKitError):
    """
    Raised when a rank or signature decision falls inside the ambiguity band.

    The ``gap`` attribute carries the relative singular value (or eigenvalue) that
    could not be classified, so callers can report how close the decision was.
    """

    def __init__(self, message: str, gap: float):
        super().__init__(message)
        self.gap = gap


class GeomKitInsufficientDataError(GeomKitError):
    """
    Raised when correspondences do not pin down a unique Möbius map.

    Example:
    -------
        Fitting from four pairs in dimension 3:
        >>> fit_from_correspondences(pairs[:4], tolerances)
        GeomKitInsufficientDataError: need at least 6 correspondences for n=3, got 4

    """

    def __init__(self, message: str, rank_gap: float | None = None):
        super().__init__(message)
        self.rank_gap = rank_gap


class GeomKitInconsistentError(GeomKitError):
    """
    Raised when correspondence data cannot come from any Möbius map.

    ``witness_index`` names the offending pair (maximal residual, or the second of two
    distinct sources sharing one image) and ``residual`` its residual.
    """

    def __init__(self, message: str, witness_index: int | None = None, residual: float | None = None):
        super().__init__(message)
        self.witness_index = witness_index
        self.residual = residual


class GeomKitNoDataError(GeomKitError):
    """Raised when a table-backed oracle is queried off its table."""

    pass


class GeomKitTooLargeError(GeomKitError):
    """Raised when the brute-force general-position oracle is asked for too large a set."""

    pass


class GeomKitConfigurationError(GeomKitError):
    """
    Raised when there is an error in GeomKit configuration.

    This includes malformed settings files, invalid tolerances and unusable
    environment variables (GEOM_KIT_SEED, GEOM_KIT_CONFIG).
    """

    pass


class GeomKitInputError(GeomKitError):
    """
    Raised when caller-supplied data violates an operation's preconditions.

    This includes dimension mismatches, malformed documents and tables whose
    domain repeats a point.
    """

    pass
