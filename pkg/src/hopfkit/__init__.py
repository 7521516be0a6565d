"""Finite-dimensional Hopf algebras from structure constants: doubles, modular data, twists."""
from .checks import CATALOG, Check
from .double import (
    DoubleData,
    QuasitriangularStructure,
    build_double,
    drinfeld_element,
    factorizability_map,
    hopf_surjection_f,
)
from .groups import FiniteGroup, conjugacy_classes, centralizer, double_dims_oracle, make_group
from .hopf import HopfAlgebra, dual_hopf, group_algebra, solve_antipode, validate_hopf
from .modular import (
    ModularData,
    analyze_modular,
    check_divisibility_double,
    check_frobenius_type,
    check_sum_rule,
    fusion_verlinde,
    prime_dimension_report,
    s_matrix,
    verify_s_factorization,
    verlinde_eigen_table,
)
from .reports import VerificationReport, run_full_suite
from .reptheory import IrrepTable, fusion_bruteforce, grouplike_count, wedderburn
from .scalars import DEFAULT_TOL, ToleranceConfig, eigen_commutative, recognize_integer, solve_linear
from .triangular import (
    ParityVector,
    TwistData,
    bicharacter_twist,
    check_u_involution,
    is_triangular,
    parity_twist,
    twist_group_algebra,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "Check",
    "DoubleData",
    "QuasitriangularStructure",
    "build_double",
    "drinfeld_element",
    "factorizability_map",
    "hopf_surjection_f",
    "FiniteGroup",
    "conjugacy_classes",
    "centralizer",
    "double_dims_oracle",
    "make_group",
    "HopfAlgebra",
    "dual_hopf",
    "group_algebra",
    "solve_antipode",
    "validate_hopf",
    "ModularData",
    "analyze_modular",
    "check_divisibility_double",
    "check_frobenius_type",
    "check_sum_rule",
    "fusion_verlinde",
    "prime_dimension_report",
    "s_matrix",
    "verify_s_factorization",
    "verlinde_eigen_table",
    "VerificationReport",
    "run_full_suite",
    "IrrepTable",
    "fusion_bruteforce",
    "grouplike_count",
    "wedderburn",
    "DEFAULT_TOL",
    "ToleranceConfig",
    "eigen_commutative",
    "recognize_integer",
    "solve_linear",
    "ParityVector",
    "TwistData",
    "bicharacter_twist",
    "check_u_involution",
    "is_triangular",
    "parity_twist",
    "twist_group_algebra",
]
