"""Exact verification of Cauchy-type identities for collocation matrices."""

from .genfun import CATALOG, GenFun, catalog, deriv0, eval_analytic, g_lambda, parse_genfun, radius
from .identity import (
    EvalConfig,
    IdentityReport,
    Verdict,
    audit_example,
    cauchy_product_check,
    lhs_partial,
    rhs_truncated,
    single_schur_check,
    symmetry_check,
    vandermonde_square_check,
    verify_analytic,
    verify_truncated,
)
from .partitions import Partition, enumerate_partitions, staircase
from .schur import bialternant, ssyt_schur_oracle, vandermonde

__version__ = "0.1.0"
