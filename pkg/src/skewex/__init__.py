"""Exact-arithmetic toolkit for finite-dimensional rational algebras.

Core pieces: structure-constant algebras with validated axioms, certified
derivations / endomorphisms / difference maps, skew polynomial and skew
Laurent extensions that realize a map as an inner one, idempotent
enumeration with the trace-rank certificate, and subspace oracles driven by
idempotents.  The `skewex` CLI wires these into named check suites.
"""

from .algebra import (
    Algebra,
    cyclic_group_algebra,
    direct_product,
    make_algebra,
    matrix_algebra,
    poly_quotient,
    upper_triangular,
)
from .linalg import Mat, Poly, Subspace, kernel, minimal_polynomial, rref, solve, span
from .maps import (
    AlgebraEndo,
    Derivation,
    EDerivation,
    derivation_space,
    exp_derivation,
    inner_automorphism,
    inner_derivation,
)
from ._extension import ExtensionResult
from .ore import SkewPoly, ore_quotient, simple_image_check, skew_mul
from .laurent import LaurentSkewPoly, laurent_mul, laurent_quotient
from .idempotents import IdempotentSet, enumerate_idempotents, ms_check, trace_rank_idempotent

__all__ = [
    "Algebra",
    "AlgebraEndo",
    "Derivation",
    "EDerivation",
    "ExtensionResult",
    "IdempotentSet",
    "LaurentSkewPoly",
    "Mat",
    "Poly",
    "SkewPoly",
    "Subspace",
    "cyclic_group_algebra",
    "derivation_space",
    "direct_product",
    "enumerate_idempotents",
    "exp_derivation",
    "inner_automorphism",
    "inner_derivation",
    "kernel",
    "laurent_mul",
    "laurent_quotient",
    "make_algebra",
    "matrix_algebra",
    "minimal_polynomial",
    "ms_check",
    "ore_quotient",
    "poly_quotient",
    "rref",
    "simple_image_check",
    "skew_mul",
    "solve",
    "span",
    "trace_rank_idempotent",
    "upper_triangular",
]

__version__ = "0.1.0"
