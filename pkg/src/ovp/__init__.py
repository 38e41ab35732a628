"""Overpartition congruence toolkit.

Truncated q-series arithmetic over ZZ and Z/m, classical theta series,
overpartition counting by several independent methods, sums-of-squares
representation counts, a half-integral-weight Hecke operator on
q-expansions, and a registry of mechanically verified overpartition
congruences.
"""

from .qseries import (
    ZZ,
    CoefficientRing,
    IdentityCheck,
    Series,
    mod_ring,
    series_from_terms,
)
from .theta import ThetaKind, check_two_dissection, theta_series
from .squares import SquaresTable, c1_c2_quadruple_check, squares_table
from .overpartition import (
    CoeffTable,
    Method,
    mod8_residues,
    mod8_truncation,
    overpartition_table,
    two_adic_value,
)
from .hecke import (
    EigenReport,
    HeckeParams,
    dim_half_integral,
    eigenform_check,
    hecke_apply,
    hecke_coefficient_identity,
    legendre,
)
from .congruence import (
    CongruenceFamily,
    VerifyReport,
    density_report,
    planted_false_family,
    registry,
    verify,
    verify_dissection_chain,
)

__version__ = "0.1.0"

__all__ = [
    "ZZ",
    "CoefficientRing",
    "CoeffTable",
    "CongruenceFamily",
    "EigenReport",
    "HeckeParams",
    "IdentityCheck",
    "Method",
    "Series",
    "SquaresTable",
    "ThetaKind",
    "c1_c2_quadruple_check",
    "check_two_dissection",
    "density_report",
    "dim_half_integral",
    "eigenform_check",
    "hecke_apply",
    "hecke_coefficient_identity",
    "legendre",
    "mod8_residues",
    "mod8_truncation",
    "mod_ring",
    "overpartition_table",
    "planted_false_family",
    "registry",
    "series_from_terms",
    "squares_table",
    "theta_series",
    "two_adic_value",
    "verify",
    "verify_dissection_chain",
    "__version__",
]
