"""Black-box map analysis: oracles, preservation checks, hypotheses and Möbius recovery."""

from geomkit_lib.analysis.checks import (
    check_k_sphere_collapse,
    check_preservation,
    check_table,
    check_weakly_circle_preserving,
    check_weakly_sphere_preserving,
    image_dimension,
    random_circles,
    random_hyperspheres,
    table_spheres,
)
from geomkit_lib.analysis.generators import (
    chain_minimum,
    generate_finite_image_table,
    generate_gp_set,
    generate_moebius_table,
    make_finite_image_oracle,
    make_table,
    sample_chain_domain,
)
from geomkit_lib.analysis.oracles import (
    ComposedOracle,
    FiniteImageOracle,
    FunctionOracle,
    MapTable,
    MoebiusOracle,
    TableOracle,
    cubing_oracle,
)
from geomkit_lib.analysis.recovery import (
    find_s2_witness,
    five_point_recover_s2,
    recover_moebius,
    spread_subset,
    verify_hypotheses,
    verify_wsp_reduction,
)
from geomkit_lib.analysis.reports import (
    CHAIN_HYPOTHESIS,
    DIRECT_SUBSET_HYPOTHESIS,
    DOMAIN_S2_HYPOTHESIS,
    FIVE_POINT_HYPOTHESIS,
    S2_WITNESS_HYPOTHESIS,
    SINGLE_POINT_DIM,
    SPHERICAL_GP_HYPOTHESIS,
    HypothesesNotSatisfied,
    HypothesesReport,
    Inconsistent,
    Recovered,
    RecoveryResult,
    S2Witness,
    SphereOutcome,
    WcpReport,
    WspReductionReport,
)

__all__ = [
    # Oracles
    "ComposedOracle",
    "FiniteImageOracle",
    "FunctionOracle",
    "MapTable",
    "MoebiusOracle",
    "TableOracle",
    "cubing_oracle",
    # Checks
    "check_k_sphere_collapse",
    "check_preservation",
    "check_table",
    "check_weakly_circle_preserving",
    "check_weakly_sphere_preserving",
    "image_dimension",
    "random_circles",
    "random_hyperspheres",
    "table_spheres",
    # Recovery
    "find_s2_witness",
    "five_point_recover_s2",
    "recover_moebius",
    "spread_subset",
    "verify_hypotheses",
    "verify_wsp_reduction",
    # Generators
    "chain_minimum",
    "generate_finite_image_table",
    "generate_gp_set",
    "generate_moebius_table",
    "make_finite_image_oracle",
    "make_table",
    "sample_chain_domain",
    # Reports
    "CHAIN_HYPOTHESIS",
    "DIRECT_SUBSET_HYPOTHESIS",
    "DOMAIN_S2_HYPOTHESIS",
    "FIVE_POINT_HYPOTHESIS",
    "S2_WITNESS_HYPOTHESIS",
    "SINGLE_POINT_DIM",
    "SPHERICAL_GP_HYPOTHESIS",
    "HypothesesNotSatisfied",
    "HypothesesReport",
    "Inconsistent",
    "Recovered",
    "RecoveryResult",
    "S2Witness",
    "SphereOutcome",
    "WcpReport",
    "WspReductionReport",
]
