"""Exact integer-matrix models of selfadjoint exact endofunctors.

Matrices over the nonnegative integers stand in for functors on a category
with finitely many simples: composition is matrix product, direct sum is
entrywise sum, adjunction is transposition, so selfadjoint functors become
symmetric matrices and polynomial functor relations become matrix equations.
The package solves, decomposes, classifies, and restricts such equations with
arbitrary-precision integer arithmetic throughout.

Matrix-level statements are necessary conditions in general: equality of
matrix shadows classifies the underlying functors exactly only over
semisimple algebras, where the matrix determines the functor.
"""

from .canonical import (
    Block1,
    Block2,
    BlockForm,
    SqrtClassification,
    classify_selfadjoint_sqrt,
    decompose,
    enumerate_involutions,
)
from .classify import (
    CommutingIdempotents,
    CyclicClassification,
    IdempotentClassification,
    NilpotencyVerdict,
    RootOfIdentity,
    check_commuting_idempotents,
    check_nilpotent,
    classify_cyclic,
    classify_idempotent,
    classify_root_of_identity,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptyComplement,
    EmptySubset,
    FunctorLabError,
    InternalFault,
    InvalidInput,
    KNotPerfectSquare,
    NotAPermutationMatrix,
    NotARoot,
    NotASolution,
    NotASquareRoot,
    NotDecomposable,
    NotIdempotent,
    NotInvariant,
    NotSymmetric,
    RelationNotSatisfied,
    SearchSpaceTooLarge,
    ShapeViolation,
)
from .restrict import (
    CartanInstance,
    CartanVerdict,
    DescentReport,
    IndexSubset,
    cartan_check,
    invariant_subsets,
    is_invariant_subset,
    preserves_add,
    relation_descends,
    restrict_quotient,
    restrict_serre,
)
from .solver import (
    SearchConfig,
    SolutionSet,
    brute_force_oracle,
    derive_entry_bound,
    solve,
)
from .zmatrix import (
    CANON_CAP_ENV,
    NatMatrix,
    Permutation,
    RelationPoly,
    canonical_cap,
    canonical_rep,
    conjugate,
    direct_sum,
    external_tensor,
    poly_eval,
    scalar_mul,
)

__version__ = "0.1.0"
