"""Exact Cholesky and LU factorization over commutative semirings."""

from .errors import (
    AxiomViolation,
    CholeskyFailure,
    HypothesisNotSatisfied,
    IndexOutOfRange,
    InvalidSemiring,
    MalformedTable,
    NotEnumerable,
    NotInvertible,
    PivotNotInvertible,
    SearchTooLarge,
    SemicholError,
    SemiringMismatch,
    ShapeMismatch,
    StronglyInvertibleRequired,
    StructureViolation,
    SubdiagonalNotNegatable,
)
from .semiring import (
    DerivedSets,
    FiniteSemiring,
    Naturals,
    Semiring,
    derived_sets,
    from_uri,
    load,
    make_boolean,
    make_chain_lattice,
    make_naturals,
    make_product,
    make_z2x_mod_x3,
    make_zn,
    square_roots,
    validate_table,
)
from .matrix import (
    BlockView,
    Matrix,
    identity,
    invert,
    is_strongly_invertible,
    is_symmetric,
    leading_principal_submatrix,
    mat_add,
    mat_mul,
    strong_invertibility,
    transpose,
    zero,
)
from .factorization import (
    CholeskyResult,
    all_cholesky_factors,
    cholesky,
    diagonal_involutions,
    lu,
    schur_complement,
    verify_schur_identity,
)
from .classify import (
    ClassificationReport,
    GramWitness,
    classify,
    corollary_equivalence_check,
    enumerate_symmetric,
    has_nonneg_numerical_range,
    is_positive_semidefinite,
    q_closed,
)
from .solve import backward_substitute, forward_substitute, solve_lu, solve_spd

__version__ = "0.1.0"
