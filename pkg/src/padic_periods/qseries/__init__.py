"""Exact q-expansions, eta quotients, a Delta rewriting engine, and the
cusp/ramification bookkeeping of the level two and level three curves."""

from .cyclotomic import CycloNumber
from .series import (
    Q_FULL,
    Q_HALF,
    Q_THIRD,
    QExpansion,
    SeriesError,
    Variable,
)
from .modforms import (
    W_THIRD,
    discriminant_expansion,
    eta_expansion,
    euler_product,
    h3_expansion,
    lambda_eta_quotient,
    lambda_expansion,
    mu3_expansion,
    mu_expansion,
    u_expansion,
    u_root_oracle,
    unit_group_exponent,
    verify_fourier_mu,
)
from .rewrite import (
    CommutationRecord,
    FunctionalEquationReport,
    ModularProduct,
    RewriteCertificate,
    RewriteError,
    constant_term,
    delta_term,
    inversion_selftest,
    linear_term,
    verify_functional_equation_u,
)
from .cusps import (
    LEVEL2_COVERINGS,
    LEVEL3_COVERINGS,
    CuspData,
    MuDivisorReport,
    PullbackReport,
    RamificationTable,
    TableFinding,
    UniformizerRelation,
    correspondence_pullback,
    cusp_classes,
    cusp_data,
    cusp_width,
    cusps_equivalent,
    gamma0_class,
    gamma0_shift,
    map_degree,
    mu_divisor,
    ramification_index,
    ramification_table,
    scaling_map,
    uniformizer_relations,
)

__all__ = [
    "CycloNumber",
    "Variable",
    "QExpansion",
    "SeriesError",
    "Q_FULL",
    "Q_HALF",
    "Q_THIRD",
    "W_THIRD",
    "eta_expansion",
    "euler_product",
    "discriminant_expansion",
    "lambda_expansion",
    "lambda_eta_quotient",
    "unit_group_exponent",
    "u_expansion",
    "u_root_oracle",
    "mu_expansion",
    "mu3_expansion",
    "h3_expansion",
    "verify_fourier_mu",
    "ModularProduct",
    "RewriteError",
    "RewriteCertificate",
    "CommutationRecord",
    "FunctionalEquationReport",
    "delta_term",
    "linear_term",
    "constant_term",
    "verify_functional_equation_u",
    "inversion_selftest",
    "CuspData",
    "cusp_data",
    "cusp_width",
    "cusps_equivalent",
    "cusp_classes",
    "gamma0_class",
    "gamma0_shift",
    "scaling_map",
    "ramification_index",
    "map_degree",
    "UniformizerRelation",
    "uniformizer_relations",
    "PullbackReport",
    "correspondence_pullback",
    "TableFinding",
    "RamificationTable",
    "ramification_table",
    "MuDivisorReport",
    "mu_divisor",
    "LEVEL2_COVERINGS",
    "LEVEL3_COVERINGS",
]
