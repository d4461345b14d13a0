"""Generalized Riccati machinery and Liouville-form integration."""

from .jets import (DifferentialPolynomial, LinearODE, d_sequence,
                   generalized_riccati, generalized_riccati_homogeneous,
                   verify_exp_integral_witness, xi_weighted_check)
from .kovacic import rational_witness_search
from .liouville import (AlgebraicResidueBlock, LiouvilleForm, LogTerm,
                        integrate_rational)

__all__ = [
    "DifferentialPolynomial", "LinearODE", "d_sequence",
    "generalized_riccati", "generalized_riccati_homogeneous",
    "xi_weighted_check", "verify_exp_integral_witness",
    "rational_witness_search", "LiouvilleForm", "LogTerm",
    "AlgebraicResidueBlock", "integrate_rational",
]
