"""GeomKit mode and strategy type definitions."""

from enum import Enum


class PositionMode(str, Enum):
    """
    Which general-position notion to test.

    - CIRCULAR: every circle misses at least two points of the set
    - SPHERICAL: every (n-1)-sphere misses at least two points of the set
    """

    CIRCULAR = "circular"
    SPHERICAL = "spherical"

    def target_dim(self, n: int) -> int:
        """
        Get the dimension of the spheres this mode quantifies over.

        Args:
        ----
            n: Dimension of the ambient sphere

        Returns:
        -------
            1 for circles, n-1 for spherical general position

        """
        return 1 if self is PositionMode.CIRCULAR else n - 1

    @classmethod
    def from_string(cls, value: str) -> "PositionMode":
        """
        Get mode from string (case-insensitive).

        Raises
        ------
            ValueError: If value doesn't match any mode

        """
        value_lower = value.lower().strip()
        try:
            return cls(value_lower)
        except ValueError:
            pass
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"Invalid general-position mode: '{value}'. Valid modes: {valid}")


class RecoveryStrategy(str, Enum):
    """
    Möbius recovery strategies.

    - DIRECT: fit once from a well-spread (n+3)-subset and verify on the whole table
    - CHAIN: fit on a 2-sphere witness and extend through nested spheres up to S^n
    """

    DIRECT = "direct"
    CHAIN = "chain"

    @classmethod
    def from_string(cls, value: str) -> "RecoveryStrategy":
        """
        Get strategy from string (case-insensitive).

        Raises
        ------
            ValueError: If value doesn't match any strategy

        """
        value_lower = value.lower().strip()
        try:
            return cls(value_lower)
        except ValueError:
            pass
        valid = ", ".join(s.value for s in cls)
        raise ValueError(f"Invalid recovery strategy: '{value}'. Valid strategies: {valid}")


class CheckMode(str, Enum):
    """Preservation checks exposed on the command line."""

    WCP = "wcp"
    WSP = "wsp"


class GeneratorKind(str, Enum):
    """Artifacts produced by ``geomkit generate``."""

    MOEBIUS_TABLE = "moebius-table"
    FINITE_IMAGE_TABLE = "finite-image-table"
    GP_SET = "gp-set"

    @property
    def display_name(self) -> str:
        """Get human-readable display name."""
        names = {
            GeneratorKind.MOEBIUS_TABLE: "Möbius sample table",
            GeneratorKind.FINITE_IMAGE_TABLE: "Finite-image sample table",
            GeneratorKind.GP_SET: "Spherical general-position point set",
        }
        return names[self]
