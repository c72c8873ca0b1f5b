"""Exact p-adic residual period pairings on supersingular lambda-invariants.

Subpackages and modules:

- arith: F_{p^2} elements, capped-precision elements of the unramified
  quadratic extension of Q_p, and exact residual classes in Z x F_{p^2}^*.
- supersingular: the Deuring polynomial and its roots over F_{p^2}.
- pairing: the residual Gram matrix of the period pairing and its checks.
- schottky: Moebius maps, ultrametric balls, Schottky groups in good
  position, and the Bruhat-Tits tree metric.
- theta: truncated theta products and the period pairing of a Schottky group.
- qseries: exact q-expansions, eta quotients, functional-equation
  certificates, and cusp/ramification bookkeeping.
- cli: the padic-periods command line tool.
"""

__version__ = "0.1.0"

from .arith import (
    Fp2Element,
    PadicElement,
    ResidualClass,
    fp2_make,
    fp2_frobenius,
    least_nonresidue,
    residual_of,
)
from .supersingular import (
    SupersingularSet,
    deuring_polynomial,
    lambda_to_j,
    supersingular_lambdas,
)
from .pairing import PairingMatrix, build_pairing_matrix
from .schottky import Disk, MobiusMap, SchottkyGroup, INFINITY
from .theta import drinfeld_pairing, theta_quotient, theta_truncated

__all__ = [
    "Fp2Element",
    "PadicElement",
    "ResidualClass",
    "fp2_make",
    "fp2_frobenius",
    "least_nonresidue",
    "residual_of",
    "SupersingularSet",
    "deuring_polynomial",
    "lambda_to_j",
    "supersingular_lambdas",
    "PairingMatrix",
    "build_pairing_matrix",
    "Disk",
    "MobiusMap",
    "SchottkyGroup",
    "INFINITY",
    "drinfeld_pairing",
    "theta_quotient",
    "theta_truncated",
    "__version__",
]
