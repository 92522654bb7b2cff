"""Tests for types module."""

import pytest

from geomkit_lib.any.types import CheckMode, GeneratorKind, PositionMode, RecoveryStrategy


class TestPositionMode:
    """Tests for PositionMode enum."""

    def test_mode_values(self):
        assert PositionMode.CIRCULAR.value == "circular"
        assert PositionMode.SPHERICAL.value == "spherical"

    def test_target_dim(self):
        """Circles for circular GP, hyperspheres for spherical GP."""
        assert PositionMode.CIRCULAR.target_dim(2) == 1
        assert PositionMode.CIRCULAR.target_dim(5) == 1
        assert PositionMode.SPHERICAL.target_dim(2) == 1
        assert PositionMode.SPHERICAL.target_dim(5) == 4

    def test_from_string_case_and_whitespace(self):
        assert PositionMode.from_string("CIRCULAR") == PositionMode.CIRCULAR
        assert PositionMode.from_string("  Spherical\n") == PositionMode.SPHERICAL

    def test_from_string_invalid(self):
        with pytest.raises(ValueError, match="Invalid general-position mode"):
            PositionMode.from_string("conic")

        with pytest.raises(ValueError, match="Valid modes: circular, spherical"):
            PositionMode.from_string("round")


class TestRecoveryStrategy:
    """Tests for RecoveryStrategy enum."""

    def test_strategy_values(self):
        assert RecoveryStrategy.DIRECT.value == "direct"
        assert RecoveryStrategy.CHAIN.value == "chain"

    def test_from_string(self):
        assert RecoveryStrategy.from_string("Chain") == RecoveryStrategy.CHAIN
        assert RecoveryStrategy.from_string(" direct ") == RecoveryStrategy.DIRECT

    def test_from_string_invalid(self):
        with pytest.raises(ValueError, match="Invalid recovery strategy"):
            RecoveryStrategy.from_string("ransac")


class TestCliEnums:
    """Tests for the enums backing CLI choices."""

    def test_check_mode_values(self):
        assert [m.value for m in CheckMode] == ["wcp", "wsp"]

    def test_generator_kinds(self):
        assert [k.value for k in GeneratorKind] == ["moebius-table", "finite-image-table", "gp-set"]

    def test_display_names(self):
        assert GeneratorKind.MOEBIUS_TABLE.display_name == "Möbius sample table"
        assert GeneratorKind.GP_SET.display_name == "Spherical general-position point set"
        assert all(k.display_name for k in GeneratorKind)
