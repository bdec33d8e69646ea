"""Exact p-adic lattices over Q_p and F_p((T)).

Dual lattices, norm-orthogonal bases, successive maxima, LVP/CVP
solvers, and exact verification of the transference-type inequalities
relating a lattice and its dual.  All arithmetic is exact: scalars are
reduced fractions over Z or F_p[T], norm values are p^e with rational e.
"""

from .scalars import (
    INF,
    FieldConfig,
    GFPoly,
    NormValue,
    ParseError,
    Scalar,
    abs_value,
    digit_expansion,
    parse_scalar,
    split_integral,
    valuation,
)
from .linalg import (
    Matrix,
    Vector,
    det,
    dot,
    gram,
    inverse,
    is_unimodular,
    mat_mul,
    mat_vec,
    rank,
    solve,
    transpose,
)
from .norms import AxiomReport, ExtensionNorm, SupNorm, WeightedSupNorm, axiom_check
from .lattices import Lattice, determinant, dual, dual_basis, member, new_lattice, same_lattice
from .ortho import OrthogonalBasis, is_orthogonal, orthogonalize, successive_maxima
from .solver import CvpResult, cvp, cvp_bruteforce, depth_sufficient, lvp, maxima_bruteforce
from .minkowski import (
    CheckRecord,
    EquivConstants,
    VerificationReport,
    corollary_products,
    equiv_constants,
    minkowski_first,
    minkowski_second,
    transference_first,
    transference_maxima,
    verification_report,
)
from .sampling import random_lattice, random_scalar, random_unimodular, random_vector
from .fileformat import LatticeFile, parse_lattice_file

__version__ = "0.1.0"

__all__ = [
    "INF",
    "FieldConfig",
    "GFPoly",
    "NormValue",
    "ParseError",
    "Scalar",
    "abs_value",
    "digit_expansion",
    "parse_scalar",
    "split_integral",
    "valuation",
    "Matrix",
    "Vector",
    "det",
    "dot",
    "gram",
    "inverse",
    "is_unimodular",
    "mat_mul",
    "mat_vec",
    "rank",
    "solve",
    "transpose",
    "AxiomReport",
    "ExtensionNorm",
    "SupNorm",
    "WeightedSupNorm",
    "axiom_check",
    "Lattice",
    "determinant",
    "dual",
    "dual_basis",
    "member",
    "new_lattice",
    "same_lattice",
    "OrthogonalBasis",
    "is_orthogonal",
    "orthogonalize",
    "successive_maxima",
    "CvpResult",
    "cvp",
    "cvp_bruteforce",
    "depth_sufficient",
    "lvp",
    "maxima_bruteforce",
    "CheckRecord",
    "EquivConstants",
    "VerificationReport",
    "corollary_products",
    "equiv_constants",
    "minkowski_first",
    "minkowski_second",
    "transference_first",
    "transference_maxima",
    "verification_report",
    "random_lattice",
    "random_scalar",
    "random_unimodular",
    "random_vector",
    "LatticeFile",
    "parse_lattice_file",
]
