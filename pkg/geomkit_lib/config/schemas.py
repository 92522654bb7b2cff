"""
Configuration schemas for geomkit-lib.

This module defines Pydantic models for:
- Numerical tolerances shared by every geometric decision
- Analysis settings (sampling, search caps, worker count, seed)

Both can be loaded from a YAML settings file (see ``geomkit_lib.config.loaders``).
"""

from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Tolerances(BaseModel):
    """
    Relative, dimensionless tolerances.

    Example:
    -------
        null: 1.0e-9
        rank: 1.0e-8
        member: 1.0e-7
        verify: 1.0e-7
        gap_factor: 1000.0

    """

    null: Annotated[float, Field(default=1e-9, gt=0, description="|Q(v)| bound for a normalized null ray")]
    rank: Annotated[
        float, Field(default=1e-8, gt=0, description="Singular values below rank * largest are treated as zero")
    ]
    member: Annotated[float, Field(default=1e-7, gt=0, description="Residual bound for sphere membership")]
    verify: Annotated[float, Field(default=1e-7, gt=0, description="Residual bound for map verification")]
    gap_factor: Annotated[
        float,
        Field(
            default=1e3,
            gt=1,
            description="Values in (rank, rank * gap_factor] are ambiguous and raise IllConditioned",
        ),
    ]

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def validate_member_covers_null(self) -> "Tolerances":
        """Validate that the membership tolerance is not tighter than the null tolerance."""
        if self.member < self.null:
            raise ValueError(f"member tolerance ({self.member}) must be >= null tolerance ({self.null})")
        return self

    @property
    def ambiguous_ceiling(self) -> float:
        """Upper edge of the ambiguity band above ``rank``."""
        return self.rank * self.gap_factor


class AnalysisSettings(BaseModel):
    """
    Settings for sampling-based checks and recovery.

    Example:
    -------
        tolerances:
          rank: 1.0e-8
        samples_per_circle: 6
        witness_search_cap: 100000
        fit_attempts: 3
        max_workers: 4
        seed: 0

    """

    tolerances: Annotated[Tolerances, Field(default_factory=Tolerances)]
    samples_per_circle: Annotated[
        int, Field(default=6, ge=4, description="Points sampled per circle (any 3 images are concircular)")
    ]
    witness_search_cap: Annotated[
        int, Field(default=100_000, ge=1, description="Anchor subsets enumerated before random fallback")
    ]
    fit_attempts: Annotated[int, Field(default=3, ge=1, description="Disjoint subsets tried by direct recovery")]
    max_workers: Annotated[int, Field(default=4, ge=1, description="Threads for independent span computations")]
    seed: Annotated[int, Field(default=0, ge=0, description="Default seed for sampling")]
    brute_force_limit: Annotated[
        int, Field(default=12, ge=1, description="Largest set the brute-force GP oracle accepts")
    ]

    model_config = ConfigDict(frozen=True, extra="forbid")
