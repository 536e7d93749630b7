"""The complete graph K_r and its subconstituent algebra.

Vertices are ``0 .. r-1`` with the base vertex x at index 0. Everything is
an exact r x r :class:`RMatrix`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_linalg import (
    RMatrix,
    Subspace,
    kernel,
    mat_inverse,
    rank,
    restrict,
    subspace_intersect,
    subspace_sum,
    sum_of,
)


@dataclass(frozen=True, eq=False)
class KrContext:
    r: int
    A: RMatrix
    Astar: RMatrix
    E0: RMatrix
    E1: RMatrix
    E0star: RMatrix
    E1star: RMatrix
    e0: RMatrix
    e1: RMatrix
    base_vertex: int = 0

    @property
    def I(self) -> RMatrix:
        return RMatrix.identity(self.r)

    @property
    def J(self) -> RMatrix:
        return RMatrix.ones(self.r)

    @property
    def xhat(self) -> RMatrix:
        return basis_vector(self.r, self.base_vertex)

    @property
    def ones(self) -> RMatrix:
        return RMatrix.ones(self.r, 1)

    @property
    def commutator(self) -> RMatrix:
        """``A^{-1} A*^{-1} A A*``."""
        return mat_inverse(self.A) @ mat_inverse(self.Astar) @ self.A @ self.Astar


@dataclass
class KrVerificationReport:
    r: int
    flags: dict[str, bool]
    dim_T: int
    commutator_eigendata: list[tuple[Fraction, int]]
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.flags.values())


def basis_vector(n: int, i: int) -> RMatrix:
    v = np.zeros((n, 1), dtype=np.int64)
    v[i, 0] = 1
    return RMatrix(v)


def build_kr(r: int) -> KrContext:
    """Construct K_r with x at index 0.

    ``e0`` is written down explicitly (1 in the corner, ``1/(r-1)`` on the
    block of non-base vertices) and ``e1 = I - e0``.
    """
    if r < 3:
        raise ValueError(f"K_r needs r >= 3 (got r={r}); for r = 2 the space e1 V is zero")
    I = RMatrix.identity(r)
    J = RMatrix.ones(r)
    E0 = J / r
    E0star = RMatrix.diag([1] + [0] * (r - 1))
    E1star = I - E0star
    e0_num = np.zeros((r, r), dtype=np.int64)
    e0_num[0, 0] = r - 1
    e0_num[1:, 1:] = 1
    e0 = RMatrix(e0_num, r - 1)
    return KrContext(
        r=r,
        A=J - I,
        Astar=(r - 1) * E0star - E1star,
        E0=E0,
        E1=I - E0,
        E0star=E0star,
        E1star=E1star,
        e0=e0,
        e1=I - e0,
    )


def e1_basis(ctx: KrContext) -> Subspace:
    """Chain basis ``y_k - y_{k+1}`` (1 <= k <= r-2) of e1 V."""
    r = ctx.r
    cols = np.zeros((r, r - 2), dtype=np.int64)
    for k in range(r - 2):
        cols[k + 1, k] = 1
        cols[k + 2, k] = -1
    return Subspace(RMatrix(cols), check=False)


def primary_space(ctx: KrContext) -> Subspace:
    """e0 V with its basis (x-hat, 1)."""
    return Subspace(RMatrix.hstack([ctx.xhat, ctx.ones]), check=False)


def kr_primary_rep(ctx: KrContext) -> tuple[RMatrix, RMatrix]:
    """Matrices of A and A* on the basis (x-hat, 1) of e0 V."""
    w = primary_space(ctx)
    return restrict(ctx.A, w, "A"), restrict(ctx.Astar, w, "A*")


def expected_primary_rep(r: int) -> tuple[RMatrix, RMatrix]:
    return (RMatrix.from_rows([[-1, 0], [1, r - 1]]),
            RMatrix.from_rows([[r - 1, r], [0, -1]]))


def commutator_eigenvalues(r: int) -> list[Fraction]:
    """Eigenvalues of the K_r commutator on E0*V, E0V and e1V, in that order."""
    return [Fraction(1 - r), 1 / Fraction(1 - r), Fraction(1)]


# -- the algebra T -------------------------------------------------------------

def _flat(ms) -> RMatrix:
    """Stack matrices as the columns of one matrix (vectorised)."""
    return RMatrix.hstack([RMatrix(m.num.reshape(-1, 1), m.den) for m in ms])


def span_dim(ms) -> int:
    ms = list(ms)
    return rank(_flat(ms)) if ms else 0


def words(letters, max_len: int):
    r = letters[0].rows
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            out = RMatrix.identity(r)
            for m in w:
                out = out @ m
            yield out


def closure_dim(generators) -> int:
    """Dimension of the unital algebra generated by ``generators``.

    Grows a spanning set by multiplying current basis elements pairwise
    until the span stops growing.
    """
    r = generators[0].rows
    basis = [RMatrix.identity(r)]
    for g in generators:
        if span_dim(basis + [g]) > len(basis):
            basis.append(g)
    while True:
        grown = False
        for a, b in itertools.product(list(basis), repeat=2):
            p = a @ b
            if span_dim(basis + [p]) > len(basis):
                basis.append(p)
                grown = True
        if not grown:
            return len(basis)


def t_basis(ctx: KrContext) -> list[RMatrix]:
    """``I, E0, E0*, E0 E0*, E0* E0``."""
    return [ctx.I, ctx.E0, ctx.E0star, ctx.E0 @ ctx.E0star, ctx.E0star @ ctx.E0]


# -- verification --------------------------------------------------------------

def verify_kr(ctx: KrContext) -> KrVerificationReport:
    r = ctx.r
    I, J = ctx.I, ctx.J
    E0, E1, E0s, E1s = ctx.E0, ctx.E1, ctx.E0star, ctx.E1star
    A, As, e0, e1 = ctx.A, ctx.Astar, ctx.e0, ctx.e1
    V = Subspace.full(r)
    flags: dict[str, bool] = {}
    details: dict[str, str] = {}

    flags["E0_is_J_over_r"] = E0 == J / r
    flags["E1_is_I_minus_E0"] = E1 == I - E0
    flags["A_is_J_minus_I"] = A == J - I
    flags["A_spectral_form"] = A == (r - 1) * E0 - E1
    flags["Astar_spectral_form"] = As == (r - 1) * E0s - E1s
    flags["dual_idempotents_partition"] = (
        E0s + E1s == I and (E0s @ E1s).is_zero() and E0s[0, 0] == 1
        and all(x in (0, 1) for x in E0s.diagonal() + E1s.diagonal()))
    flags["A_and_Astar_from_E0"] = A == r * E0 - I and As == r * E0s - I

    flags["rE0E0sE0_eq_E0"] = r * (E0 @ E0s @ E0) == E0
    flags["rE0sE0E0s_eq_E0s"] = r * (E0s @ E0 @ E0s) == E0s

    basis = t_basis(ctx)
    flags["T_basis_independent"] = span_dim(basis) == 5
    word_dim = span_dim(words([E0, E0s], 4))
    details["words_dim"] = str(word_dim)
    flags["T_words_span_dim_5"] = word_dim == 5
    flags["T_basis_closed"] = all(
        span_dim(basis + [a @ b]) == 5 for a in basis for b in basis)
    dim_T = closure_dim([E0, E0s])
    flags["T_generated_by_E0_E0s"] = dim_T == 5 == closure_dim([A, As])

    flags["e0_e1_complementary_idempotents"] = (
        e0 + e1 == I and e0 @ e0 == e0 and e1 @ e1 == e1
        and (e0 @ e1).is_zero() and (e1 @ e0).is_zero())
    flags["e0_symmetric"] = e0.T == e0
    primary = primary_space(ctx)
    flags["e0_projects_onto_primary"] = (
        Subspace.span(e0) == primary and e0 @ primary.matrix == primary.matrix)
    flags["e0_formula"] = e0 == Fraction(r, r - 1) * (E0 + E0s - E0 @ E0s - E0s @ E0)
    flags["e0_absorbs_E0s"] = e0 @ E0s == E0s and E0s @ e0 == E0s
    flags["e0_absorbs_E0"] = e0 @ E0 == E0 and E0 @ e0 == E0
    flags["e0_e1_central"] = all(
        e @ g == g @ e for e in (e0, e1) for g in (E0, E0s, A, As))
    flags["e0_in_T"] = span_dim(basis + [e0]) == 5

    E0V, E0sV = Subspace.span(E0), Subspace.span(E0s)
    E1V, E1sV = Subspace.span(E1), Subspace.span(E1s)
    e1V = e1_basis(ctx)
    flags["E0V_is_span_ones"] = E0V == Subspace.span([ctx.ones])
    flags["E0sV_is_span_xhat"] = E0sV == Subspace.span([ctx.xhat])
    flags["e0V_is_E0V_plus_E0sV"] = (
        subspace_sum(E0V, E0sV) == primary and subspace_intersect(E0V, E0sV).dim == 0)
    flags["dim_e1V_is_r_minus_2"] = e1V.dim == r - 2 == Subspace.span(e1).dim
    flags["e1_chain_basis_spans_e1V"] = e1V == Subspace.span(e1)
    flags["e1V_orthogonal_to_E0V_E0sV"] = (
        e1V.is_orthogonal_to(E0V) and e1V.is_orthogonal_to(E0sV))
    parts = [E0sV, E0V, e1V]
    flags["V_direct_sum_E0sV_E0V_e1V"] = (
        sum_of(parts, r) == V and sum(p.dim for p in parts) == r
        and all(subspace_intersect(p, q).dim == 0
                for p, q in itertools.combinations(parts, 2)))
    flags["e1V_is_E1V_cap_E1sV"] = subspace_intersect(E1V, E1sV) == e1V
    minus = -e1V.matrix
    flags["A_acts_as_minus_I_on_e1V"] = A @ e1V.matrix == minus
    flags["Astar_acts_as_minus_I_on_e1V"] = As @ e1V.matrix == minus

    B, Bs = kr_primary_rep(ctx)
    eB, eBs = expected_primary_rep(r)
    flags["primary_rep_matrices"] = B == eB and Bs == eBs
    lam_x, lam_1, lam_e = commutator_eigenvalues(r)
    flags["primary_rep_commutator_diagonal"] = (
        mat_inverse(B) @ mat_inverse(Bs) @ B @ Bs == RMatrix.diag([lam_x, lam_1]))

    C = ctx.commutator
    eigendata = []
    spaces = []
    for lam in (lam_x, lam_1, lam_e):
        sp = kernel(C - lam * I)
        spaces.append(sp)
        eigendata.append((lam, sp.dim))
    flags["commutator_eigenspaces"] = (
        spaces[0] == E0sV and spaces[1] == E0V and spaces[2] == e1V)
    flags["commutator_diagonalizable"] = sum(d for _, d in eigendata) == r
    flags["commutator_on_vectors"] = (
        C @ ctx.xhat == lam_x * ctx.xhat and C @ ctx.ones == lam_1 * ctx.ones
        and C @ e1V.matrix == e1V.matrix)

    return KrVerificationReport(r=r, flags=flags, dim_T=dim_T,
                                commutator_eigendata=eigendata, details=details)
