"""Exact sparse effective Nullstellensatz toolkit.

Newton-polytope support bounds for polynomial ideal membership, hypothesis
checks for the toric "no zeros at infinity" conditions, and verified
cofactor certificates ``sum_j F_j G_j = Phi^nu``.
"""

from .errors import (
    ContractViolation,
    DegenerateInput,
    HypothesisUnverifiable,
    HypothesisViolation,
    SparseNullError,
    UnsupportedDimension,
)
from .polytope import LatticePolytope, hull, simplex, cube
from .sparsepoly import SparsePolynomial
from .membership import Certificate, solve_membership, escalate_solve, verify_certificate

__all__ = [
    "ContractViolation",
    "DegenerateInput",
    "HypothesisUnverifiable",
    "HypothesisViolation",
    "SparseNullError",
    "UnsupportedDimension",
    "LatticePolytope",
    "hull",
    "simplex",
    "cube",
    "SparsePolynomial",
    "Certificate",
    "solve_membership",
    "escalate_solve",
    "verify_certificate",
]

__version__ = "0.1.0"
