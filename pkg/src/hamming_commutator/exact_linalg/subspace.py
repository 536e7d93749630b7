"""Subspaces of Q^n and the operations built on exact row reduction."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .elimination import det_bareiss, rref
from .matrix import DimensionMismatchError, LinAlgError, RMatrix


class SingularMatrixError(LinAlgError):
    def __init__(self, rank: int, n: int):
        super().__init__(f"singular matrix: rank {rank} < {n}")
        self.rank = rank
        self.n = n


class ContainmentError(LinAlgError):
    pass


class InvarianceError(LinAlgError):
    pass


def _ints(m: RMatrix) -> np.ndarray:
    """Integer matrix with the same row/column spaces as ``m``."""
    return m.num


def rank(m: RMatrix) -> int:
    return rref(_ints(m)).rank


class Subspace:
    """A subspace of Q^n given by an ordered basis.

    The basis is the column list of ``matrix`` (an n x k RMatrix); the
    columns must be linearly independent. Equality is equality of spans.
    """

    __slots__ = ("ambient_dim", "matrix")

    def __init__(self, matrix: RMatrix, *, check: bool = True):
        if check and rank(matrix) != matrix.cols:
            raise LinAlgError(
                f"basis vectors are dependent (rank {rank(matrix)} < {matrix.cols})")
        object.__setattr__(self, "ambient_dim", matrix.rows)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(RMatrix.zeros(n, 0), check=False)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(RMatrix.identity(n), check=False)

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> Subspace:
        """Span of column vectors (or of the columns of one matrix).

        Keeps the earliest independent vectors in their given order.
        """
        if isinstance(vectors, RMatrix):
            m = vectors
        else:
            vectors = list(vectors)
            if not vectors:
                if ambient_dim is None:
                    raise ValueError("span of no vectors needs ambient_dim")
                return cls.zero(ambient_dim)
            m = RMatrix.hstack(vectors)
        if ambient_dim is not None and m.rows != ambient_dim:
            raise DimensionMismatchError(
                f"vectors live in Q^{m.rows}, expected Q^{ambient_dim}")
        if m.cols == 0:
            return cls.zero(m.rows)
        piv = rref(_ints(m)).pivots
        return cls(m[:, list(piv)], check=False)

    @property
    def dim(self) -> int:
        return self.matrix.cols

    @property
    def basis(self) -> list[RMatrix]:
        return self.matrix.columns()

    def contains_vector(self, v: RMatrix) -> bool:
        return rank(RMatrix.hstack([self.matrix, v])) == self.dim

    def contains(self, other: Subspace) -> bool:
        _same_ambient(self, other)
        if other.dim == 0:
            return True
        return rank(RMatrix.hstack([self.matrix, other.matrix])) == self.dim

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains(other))

    __hash__ = None

    def is_orthogonal_to(self, other: Subspace) -> bool:
        _same_ambient(self, other)
        if self.dim == 0 or other.dim == 0:
            return True
        return (self.matrix.T @ other.matrix).is_zero()

    def image(self, m: RMatrix) -> Subspace:
        """The subspace ``m(self)``."""
        if self.dim == 0:
            return Subspace.zero(m.rows)
        return Subspace.span(m @ self.matrix)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _same_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces of different ambient spaces: Q^{u.ambient_dim} vs Q^{v.ambient_dim}")


def kernel(a: RMatrix) -> Subspace:
    """Null space ``{v : a v = 0}``."""
    ech = rref(_ints(a))
    return Subspace(RMatrix(ech.kernel_basis()), check=False)


def column_space(a: RMatrix) -> Subspace:
    return Subspace.span(a)


def mat_inverse(a: RMatrix) -> RMatrix:
    """Exact inverse by Gauss-Jordan elimination on ``[a | I]``.

    Raises :class:`SingularMatrixError` carrying the rank when ``a`` is not
    invertible.
    """
    if not a.is_square():
        raise DimensionMismatchError(f"inverse of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    aug = np.concatenate([a.num, np.eye(n, dtype=np.int64).astype(object)], axis=1)
    ech = rref(aug)
    left = [p for p in ech.pivots if p < n]
    if len(left) < n:
        raise SingularMatrixError(rank(a), n)
    # RREF of [a | I] is [I | a^{-1}] up to the common denominator; the
    # numerator of a was used unscaled, so multiply back by a.den
    return RMatrix(ech.num[:, n:], ech.den) * a.den


def determinant(a: RMatrix) -> Fraction:
    if not a.is_square():
        raise DimensionMismatchError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    return Fraction(det_bareiss(a.num), a.den ** a.rows)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    if u.dim == 0:
        return v
    if v.dim == 0:
        return u
    return Subspace.span(RMatrix.hstack([u.matrix, v.matrix]))


def sum_of(spaces, ambient_dim: int) -> Subspace:
    mats = [s.matrix for s in spaces if s.dim]
    if not mats:
        return Subspace.zero(ambient_dim)
    return Subspace.span(RMatrix.hstack(mats))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Exact intersection via the kernel of ``[U | -V]``."""
    _same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    coeffs = kernel(RMatrix.hstack([u.matrix, -v.matrix]))
    if coeffs.dim == 0:
        return Subspace.zero(u.ambient_dim)
    # (a, b) -> U a is injective on the kernel, so these stay independent
    return Subspace(u.matrix @ coeffs.matrix[:u.dim, :], check=False)


def _first_outside(w: Subspace, vectors: RMatrix) -> int | None:
    """Index of the first column of ``vectors`` not in ``w`` (None if all are)."""
    aug = RMatrix.hstack([w.matrix, vectors])
    for p in rref(_ints(aug)).pivots:
        if p >= w.dim:
            return p - w.dim
    return None


def orth_complement_within(u: Subspace, w: Subspace) -> Subspace:
    """The subspace of ``w`` orthogonal to ``u``, for ``u`` inside ``w``.

    Uses the bilinear form ``<a, b> = a^t b``; on rational vectors this is
    the Hermitean form. The result ``c`` satisfies ``u + c = w`` (direct).
    """
    _same_ambient(u, w)
    if u.dim == 0:
        return w
    bad = _first_outside(w, u.matrix)
    if bad is not None:
        raise ContainmentError(f"basis vector {bad} of the inner subspace is not in the outer one")
    coeffs = kernel(u.matrix.T @ w.matrix)
    if coeffs.dim == 0:
        return Subspace.zero(w.ambient_dim)
    return Subspace(w.matrix @ coeffs.matrix, check=False)


def restrict(g: RMatrix, w: Subspace, name: str = "generator") -> RMatrix:
    """Matrix of ``g`` acting on ``w`` in its basis: ``W X = g W``.

    Raises :class:`InvarianceError` if ``g`` does not map ``w`` into itself.
    """
    if g.rows != w.ambient_dim or g.cols != w.ambient_dim:
        raise DimensionMismatchError(
            f"{name} is {g.rows}x{g.cols}, subspace lives in Q^{w.ambient_dim}")
    k = w.dim
    if k == 0:
        return RMatrix.zeros(0, 0)
    gw = g @ w.matrix
    aug = RMatrix.hstack([w.matrix, gw])
    ech = rref(aug.num)
    for p in ech.pivots:
        if p >= k:
            raise InvarianceError(f"{name} maps basis vector {p - k} out of the subspace")
    # RREF of [W | gW] is [[I, X], [0, 0]] since W has independent columns
    return RMatrix(ech.num[:k, k:], ech.den)


def commutant_dim(generators, w: Subspace, names=None) -> int:
    """Dimension of the algebra of k x k matrices commuting with every
    restricted generator on ``w``.
    """
    generators = list(generators)
    names = list(names) if names is not None else [f"generator {i}" for i in range(len(generators))]
    k = w.dim
    if k == 0:
        return 0
    eye = np.eye(k, dtype=np.int64).astype(object)
    blocks = []
    for g, name in zip(generators, names):
        x = restrict(g, w, name).num
        # row-major vec: vec(Z X) = (I kron X^t) vec Z, vec(X Z) = (X kron I) vec Z
        blocks.append(np.kron(eye, x.T) - np.kron(x, eye))
    system = np.concatenate(blocks, axis=0)
    return k * k - rref(system).rank


def is_invariant(g: RMatrix, w: Subspace) -> bool:
    try:
        restrict(g, w)
    except InvarianceError:
        return False
    return True


def inner(u: RMatrix, v: RMatrix) -> Fraction:
    """``u^t v`` for column vectors."""
    return (u.T @ v)[0, 0]


__all__ = [
    "ContainmentError", "InvarianceError", "SingularMatrixError", "Subspace",
    "column_space", "commutant_dim", "determinant", "inner", "is_invariant", "kernel",
    "mat_inverse", "orth_complement_within", "rank", "restrict", "subspace_intersect",
    "subspace_sum", "sum_of",
]
