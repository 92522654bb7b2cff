"""Tests for configuration schemas."""

import pytest
from pydantic import ValidationError

from geomkit_lib.config.schemas import AnalysisSettings, Tolerances


class TestTolerances:
    """Tests for Tolerances model."""

    def test_defaults(self):
        tol = Tolerances()
        assert tol.null == 1e-9
        assert tol.rank == 1e-8
        assert tol.member == 1e-7
        assert tol.verify == 1e-7
        assert tol.gap_factor == 1e3

    def test_ambiguous_ceiling(self):
        assert Tolerances().ambiguous_ceiling == pytest.approx(1e-5)
        assert Tolerances(rank=1e-6, gap_factor=10).ambiguous_ceiling == pytest.approx(1e-5)

    @pytest.mark.parametrize("field", ["null", "rank", "member", "verify"])
    def test_positive(self, field):
        with pytest.raises(ValidationError):
            Tolerances(**{field: 0.0})

    def test_gap_factor_above_one(self):
        with pytest.raises(ValidationError):
            Tolerances(gap_factor=1.0)

    def test_member_covers_null(self):
        """Test that a membership tolerance tighter than the null tolerance is rejected."""
        with pytest.raises(ValidationError, match="must be >= null tolerance"):
            Tolerances(null=1e-6, member=1e-8)

    def test_frozen_and_strict(self):
        tol = Tolerances()
        with pytest.raises(ValidationError):
            tol.rank = 1e-3  # type: ignore[misc]
        with pytest.raises(ValidationError):
            Tolerances(epsilon=1e-3)  # type: ignore[call-arg]


class TestAnalysisSettings:
    """Tests for AnalysisSettings model."""

    def test_defaults(self):
        settings = AnalysisSettings()
        assert settings.tolerances == Tolerances()
        assert settings.samples_per_circle == 6
        assert settings.witness_search_cap == 100_000
        assert settings.fit_attempts == 3
        assert settings.seed == 0
        assert settings.brute_force_limit == 12

    def test_nested_tolerances_from_dict(self):
        settings = AnalysisSettings.model_validate({"tolerances": {"verify": 1e-6}, "seed": 7})
        assert settings.tolerances.verify == 1e-6
        assert settings.tolerances.rank == 1e-8
        assert settings.seed == 7

    def test_samples_per_circle_minimum(self):
        """Fewer than four samples cannot tell a circle from three arbitrary images."""
        with pytest.raises(ValidationError):
            AnalysisSettings(samples_per_circle=3)

    def test_negative_seed(self):
        with pytest.raises(ValidationError):
            AnalysisSettings(seed=-1)

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            AnalysisSettings.model_validate({"workers": 2})
