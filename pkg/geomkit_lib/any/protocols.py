"""
Protocol definitions for GeomKit.

These protocols define the contracts that black-box maps must implement so the
preservation checks and the recovery pipeline can treat them uniformly.

All protocols follow PEP 544 (Structural Subtyping / Protocol).
"""

from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from geomkit_lib.geometry.points import ExtendedPoint


@runtime_checkable
class MapOracle(Protocol):
    """
    Protocol for a black-box map T: S^n -> S^n.

    Implementations:
    - analysis/oracles.py - MoebiusOracle (exact evaluation of a MoebiusMap)
    - analysis/oracles.py - FiniteImageOracle (arbitrary assignment onto a finite image)
    - analysis/oracles.py - TableOracle (lookup, NoData off-table)
    - analysis/oracles.py - FunctionOracle, ComposedOracle

    Implementations must be deterministic and safe for concurrent queries.
    """

    n: int

    def query(self, p: "ExtendedPoint") -> "ExtendedPoint":
        """
        Evaluate the map at ``p``.

        Raises
        ------
            GeomKitNoDataError: If the oracle has no value for ``p``

        """
        ...
