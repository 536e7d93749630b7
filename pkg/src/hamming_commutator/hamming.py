"""The Hamming graph H(D, r) with its Bose-Mesner and dual Bose-Mesner data.

Vertices are D-tuples over ``range(r)``, encoded in base r with coordinate 1
as the most significant digit; the base vertex (0, ..., 0) has index 0. With
this encoding every tensor identity is a literal Kronecker identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .complete_graph import KrContext, build_kr
from .exact_linalg import (
    LinAlgError,
    RMatrix,
    SingularMatrixError,
    kron,
    kron_power,
    mat_inverse,
)

DEFAULT_SIZE_CAP = 256


class HammingConstructionError(LinAlgError):
    pass


class SizeCapError(ValueError):
    def __init__(self, D: int, r: int, cap: int):
        super().__init__(f"H({D},{r}) has r^D = {r ** D} vertices, above the size cap {cap}")
        self.n = r ** D
        self.cap = cap


class DistanceRegularityError(LinAlgError):
    pass


@dataclass(frozen=True, eq=False)
class HammingContext:
    D: int
    r: int
    digits: np.ndarray
    dist_matrices: tuple[RMatrix, ...]
    idempotents: tuple[RMatrix, ...]
    dual_idempotents: tuple[RMatrix, ...]
    dual_dist_matrices: tuple[RMatrix, ...]
    kr: KrContext
    build_checks: dict[str, bool] = field(default_factory=dict, repr=False)
    # memo for derived subspaces, keyed by tuples; values are never replaced
    cache: dict = field(default_factory=dict, repr=False)

    base_vertex = 0

    @property
    def n_vertices(self) -> int:
        return self.r ** self.D

    @property
    def A(self) -> RMatrix:
        return self.dist_matrices[1]

    @property
    def Astar(self) -> RMatrix:
        return self.dual_dist_matrices[1]

    @property
    def A_last(self) -> RMatrix:
        return self.dist_matrices[self.D]

    @property
    def Astar_last(self) -> RMatrix:
        return self.dual_dist_matrices[self.D]

    @property
    def weights(self) -> np.ndarray:
        """Distance from the base vertex, per vertex index."""
        return np.count_nonzero(self.digits, axis=1)

    def xhat(self) -> RMatrix:
        v = np.zeros((self.n_vertices, 1), dtype=np.int64)
        v[0, 0] = 1
        return RMatrix(v)

    def vertex_index(self, coords) -> int:
        idx = 0
        for c in coords:
            idx = idx * self.r + int(c)
        return idx

    def cached(self, key, make):
        try:
            return self.cache[key]
        except KeyError:
            return self.cache.setdefault(key, make())


@dataclass
class ParameterTables:
    """Intersection numbers ``p[h, i, j]`` and Krein parameters ``q[h, i, j]``."""

    p: np.ndarray
    q: np.ndarray
    checks: dict[str, bool] = field(default_factory=dict)


def _hamming_distance_table(digits: np.ndarray) -> np.ndarray:
    return np.count_nonzero(digits[:, None, :] != digits[None, :, :], axis=2)


def _idempotent(D: int, r: int, j: int) -> RMatrix:
    """E_j as the sum over j-subsets S of tensors with E1 on S and E0 off S."""
    n = r ** D
    # numerators over r: E0 = J / r, E1 = (r I - J) / r
    f0 = np.ones((r, r), dtype=np.int64)
    f1 = r * np.eye(r, dtype=np.int64) - f0
    total = np.zeros((n, n), dtype=np.int64)
    for S in itertools.combinations(range(D), j):
        term = np.ones((1, 1), dtype=np.int64)
        for c in range(D):
            term = np.kron(term, f1 if c in S else f0)
        total += term
    return RMatrix(total, r ** D)


def build_hamming(D: int, r: int, size_cap: int = DEFAULT_SIZE_CAP, *,
                  force: bool = False, verify: bool = True) -> HammingContext:
    """Construct H(D, r) and check the standard identities.

    The size cap bounds ``r**D``; ``force=True`` skips it. With
    ``verify=True`` any failed identity raises
    :class:`HammingConstructionError` naming it.
    """
    if D < 1:
        raise ValueError(f"need D >= 1, got {D}")
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    if r ** D > size_cap and not force:
        raise SizeCapError(D, r, size_cap)
    n = r ** D
    digits = np.array(list(itertools.product(range(r), repeat=D)), dtype=np.int64)
    dist = _hamming_distance_table(digits)
    A = tuple(RMatrix((dist == i).astype(np.int64)) for i in range(D + 1))
    E = tuple(_idempotent(D, r, j) for j in range(D + 1))
    weights = dist[0]
    Es = tuple(RMatrix(np.diag((weights == i).astype(np.int64))) for i in range(D + 1))
    As = tuple(RMatrix(np.diag(E[i].num[0]), E[i].den) * n for i in range(D + 1))
    ctx = HammingContext(D=D, r=r, digits=digits, dist_matrices=A, idempotents=E,
                         dual_idempotents=Es, dual_dist_matrices=As, kr=build_kr(r))
    if verify:
        checks = axiom_checks(ctx)
        ctx.build_checks.update(checks)
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            raise HammingConstructionError(f"H({D},{r}) fails: {', '.join(failed)}")
    return ctx


def sphere_sizes(ctx: HammingContext) -> list[int]:
    """``C(D, i) (r-1)^i`` for i = 0..D, cross-checked against the matrices."""
    sizes = [comb(ctx.D, i) * (ctx.r - 1) ** i for i in range(ctx.D + 1)]
    for i, s in enumerate(sizes):
        if ctx.dual_idempotents[i].trace() != s or int(np.sum(ctx.dist_matrices[i].num[0])) != s:
            raise HammingConstructionError(f"sphere {i} does not have {s} vertices")
    return sizes


def _pairwise_delta(ms, product) -> bool:
    n = ms[0].rows
    zero = RMatrix.zeros(n, n)
    return all(product(a, b) == (a if i == j else zero)
               for i, a in enumerate(ms) for j, b in enumerate(ms))


def axiom_checks(ctx: HammingContext) -> dict[str, bool]:
    """The defining identities of {A_i}, {E_i}, {E_i*}, {A_i*} as named flags."""
    D, r, n = ctx.D, ctx.r, ctx.n_vertices
    A, E, Es, As = ctx.dist_matrices, ctx.idempotents, ctx.dual_idempotents, ctx.dual_dist_matrices
    I, J = RMatrix.identity(n), RMatrix.ones(n)
    checks: dict[str, bool] = {}

    checks["A0_is_I"] = A[0] == I
    checks["sum_A_is_J"] = sum(A[1:], A[0]) == J
    checks["A_symmetric"] = all(a.T == a for a in A)
    checks["A_entrywise_orthogonal"] = _pairwise_delta(A, RMatrix.hadamard)
    checks["A1_is_kron_sum"] = A[1] == kron_sum(ctx.kr.A, D)

    checks["E0_is_J_over_n"] = E[0] == J / n
    checks["sum_E_is_I"] = sum(E[1:], E[0]) == I
    checks["E_symmetric"] = all(e.T == e for e in E)
    checks["E_orthogonal_idempotents"] = _pairwise_delta(E, RMatrix.__matmul__)
    checks["E_ranks"] = all(E[j].trace() == comb(D, j) * (r - 1) ** j for j in range(D + 1))
    checks["E_in_Bose_Mesner"] = all(_in_span_of_distance_matrices(ctx, e) for e in E)
    theta = [Fraction(D * (r - 1) - r * j) for j in range(D + 1)]
    checks["A_E_eigenvalues"] = all(A[1] @ E[j] == theta[j] * E[j] for j in range(D + 1))

    checks["sum_Estar_is_I"] = sum(Es[1:], Es[0]) == I
    checks["Estar_diagonal_indicators"] = all(
        set(e.diagonal()) <= {0, 1} and e == RMatrix.diag(e.diagonal()) for e in Es)
    checks["Estar_orthogonal_idempotents"] = _pairwise_delta(Es, RMatrix.__matmul__)
    checks["Estar_spheres"] = all(
        [int(x) for x in Es[i].diagonal()] == [int(w == i) for w in ctx.weights]
        for i in range(D + 1))

    checks["A0star_is_I"] = As[0] == I
    checks["sum_Astar_is_n_E0star"] = sum(As[1:], As[0]) == n * Es[0]
    checks["Astar_diagonal"] = all(a == RMatrix.diag(a.diagonal()) for a in As)
    checks["Astar_from_E_row"] = all(
        As[i].diagonal() == [n * E[i][0, y] for y in range(n)] for i in range(D + 1))

    kr = ctx.kr
    checks["A_last_is_tensor_power"] = A[D] == kron_power(kr.A, D)
    checks["Astar_last_is_tensor_power"] = As[D] == kron_power(kr.Astar, D)
    if D == 1:
        checks["D1_matches_Kr"] = (A[1] == kr.A and E[1] == kr.E1
                                   and As[1] == kr.Astar and Es[0] == kr.E0star)
    try:
        sphere_sizes(ctx)
        checks["sphere_sizes"] = True
    except HammingConstructionError:
        checks["sphere_sizes"] = False
    return checks


def kron_sum(m: RMatrix, D: int) -> RMatrix:
    """``sum_c I x ... x m (slot c) x ... x I``."""
    eye = RMatrix.identity(m.rows)
    total = None
    for c in range(D):
        term = m if c == 0 else eye
        for k in range(1, D):
            term = kron(term, m if k == c else eye)
        total = term if total is None else total + term
    return total


def _in_span_of_distance_matrices(ctx: HammingContext, m: RMatrix) -> bool:
    # m is in span{A_h} iff it is constant on each distance class; the
    # coefficient of A_h is then the entry at (0, y) for any y at distance h
    recon = RMatrix.zeros(m.rows, m.cols)
    for h, a in enumerate(ctx.dist_matrices):
        y = _vertex_at_distance(ctx, h)
        recon = recon + m[0, y] * a
    return recon == m


def _vertex_at_distance(ctx: HammingContext, h: int) -> int:
    return ctx.vertex_index([1] * h + [0] * (ctx.D - h))


def invertibility_checks(ctx: HammingContext) -> dict[str, bool]:
    """A_D and A_D* are invertible, with inverses confirmed by multiplication."""
    n = ctx.n_vertices
    out = {}
    for name, m in (("A_last_invertible", ctx.A_last), ("Astar_last_invertible", ctx.Astar_last)):
        try:
            inv = mat_inverse(m)
            out[name] = m @ inv == RMatrix.identity(n)
        except SingularMatrixError:
            out[name] = False
    return out


def parameter_tables(ctx: HammingContext) -> ParameterTables:
    """Extract p^h_ij and q^h_ij and verify both expansions globally.

    Raises :class:`DistanceRegularityError` if ``A_i A_j`` is not the
    combination of distance matrices read off its first row.
    """
    D, n = ctx.D, ctx.n_vertices
    A, E, As = ctx.dist_matrices, ctx.idempotents, ctx.dual_dist_matrices
    reps = [_vertex_at_distance(ctx, h) for h in range(D + 1)]
    p = np.empty((D + 1,) * 3, dtype=object)
    q = np.empty((D + 1,) * 3, dtype=object)
    checks: dict[str, bool] = {}

    for i, j in itertools.product(range(D + 1), repeat=2):
        prod = A[i] @ A[j]
        for h in range(D + 1):
            p[h, i, j] = prod[0, reps[h]]
        expansion = RMatrix.zeros(n, n)
        for h in range(D + 1):
            expansion = expansion + p[h, i, j] * A[h]
        if prod != expansion:
            raise DistanceRegularityError(
                f"A_{i} A_{j} is not constant on distance classes")
    checks["A_product_expansion"] = True

    mult = [E[h].trace() for h in range(D + 1)]
    for i, j in itertools.product(range(D + 1), repeat=2):
        had = E[i].hadamard(E[j])
        for h in range(D + 1):
            s = had.hadamard(E[h])
            total = Fraction(int(np.sum(s.num)), s.den)
            q[h, i, j] = n * total / mult[h]
    checks["E_entrywise_expansion"] = all(
        E[i].hadamard(E[j]) == _combo([q[h, i, j] for h in range(D + 1)], E) / n
        for i, j in itertools.product(range(D + 1), repeat=2))
    checks["Astar_product_expansion"] = all(
        As[i] @ As[j] == _combo([q[h, i, j] for h in range(D + 1)], As)
        for i, j in itertools.product(range(D + 1), repeat=2))
    checks["krein_nonnegative"] = all(x >= 0 for x in q.flat)
    checks["q_polynomial_vanishing"] = all(
        q[h, i, j] == 0 for h, i, j in itertools.product(range(D + 1), repeat=3)
        if max(h, i, j) > (h + i + j) - max(h, i, j))
    checks["q_polynomial_nonvanishing"] = all(
        q[h, i, j] != 0 for h, i, j in itertools.product(range(D + 1), repeat=3)
        if 2 * max(h, i, j) == h + i + j)
    checks["intersection_numbers_valency"] = p[0, 1, 1] == D * (ctx.r - 1)
    if D >= 1:
        checks["intersection_numbers_a1"] = p[1, 1, 1] == ctx.r - 2
    return ParameterTables(p=p, q=q, checks=checks)


def _combo(coeffs, ms) -> RMatrix:
    out = RMatrix.zeros(*ms[0].shape)
    for c, m in zip(coeffs, ms):
        if c:
            out = out + c * m
    return out
