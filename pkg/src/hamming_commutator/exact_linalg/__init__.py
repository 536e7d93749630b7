"""Exact linear algebra over Q: matrices, subspaces, row reduction."""

from .elimination import Echelon, rref, rref_bareiss, rref_modular
from .matrix import (
    DimensionMismatchError,
    LinAlgError,
    Rational,
    RMatrix,
    as_rmatrix,
    kron,
    kron_power,
    mat_mul,
)
from .subspace import (
    ContainmentError,
    InvarianceError,
    SingularMatrixError,
    Subspace,
    column_space,
    commutant_dim,
    determinant,
    inner,
    is_invariant,
    kernel,
    mat_inverse,
    orth_complement_within,
    rank,
    restrict,
    subspace_intersect,
    subspace_sum,
    sum_of,
)

__all__ = [
    "ContainmentError", "DimensionMismatchError", "Echelon", "InvarianceError",
    "LinAlgError", "RMatrix", "Rational", "SingularMatrixError", "Subspace",
    "as_rmatrix", "column_space", "commutant_dim", "determinant", "inner", "is_invariant",
    "kernel", "kron", "kron_power", "mat_inverse", "mat_mul",
    "orth_complement_within", "rank", "restrict", "rref", "rref_bareiss",
    "rref_modular", "subspace_intersect", "subspace_sum", "sum_of",
]
