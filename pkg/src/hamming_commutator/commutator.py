"""The group commutator ``C = A_D^{-1} A_D*^{-1} A_D A_D*`` of H(D, r).

``C`` is diagonalizable with eigenvalues ``(1-r)^s`` for ``-D <= s <= D``.
Eigenspaces are computed as kernels at those known values, so nothing is
ever approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .exact_linalg import (
    LinAlgError,
    RMatrix,
    Subspace,
    determinant,
    kernel,
    kron_power,
    mat_inverse,
    sum_of,
)
from .hamming import HammingContext
from .split_decomposition import patterns, pattern_vectors, vij_tilde


class CommutatorMismatchError(LinAlgError):
    """The direct and Kronecker-power constructions of C disagree."""


def eigenvalue(r: int, s: int) -> Fraction:
    return Fraction(1 - r) ** s


def predicted_dimension(D: int, r: int, s: int) -> int:
    """Sum of ``C(D,i) C(i,D-j) (r-2)^(i+j-D)`` over ``j - i = s, i + j >= D``."""
    if abs(s) > D:
        raise ValueError(f"s={s} outside -{D}..{D}")
    total = 0
    for i in range(D + 1):
        j = i + s
        if 0 <= j <= D and i + j >= D:
            total += comb(D, i) * comb(i, D - j) * (r - 2) ** (i + j - D)
    return total


def build_commutator(ctx: HammingContext) -> RMatrix:
    """C by direct inversion, cross-checked against the D-th Kronecker power
    of the K_r commutator. Cached on the context."""
    def make():
        direct = (mat_inverse(ctx.A_last) @ mat_inverse(ctx.Astar_last)
                  @ ctx.A_last @ ctx.Astar_last)
        tensor = kron_power(ctx.kr.commutator, ctx.D)
        if direct != tensor:
            raise CommutatorMismatchError(
                f"H({ctx.D},{ctx.r}): direct and Kronecker-power commutators differ")
        return direct
    return ctx.cached("commutator", make)


@dataclass(frozen=True, eq=False)
class Eigenslot:
    s: int
    eigenvalue: Fraction
    eigenspace: Subspace
    predicted_dim: int

    @property
    def computed_dim(self) -> int:
        return self.eigenspace.dim


@dataclass(frozen=True, eq=False)
class CommutatorSpectrum:
    D: int
    r: int
    C: RMatrix
    eigendata: dict[int, Eigenslot]
    projections: dict[int, RMatrix]
    checks: dict[str, bool] = field(default_factory=dict)
    failures: dict[str, list[int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def eigentable(self) -> list[tuple[int, Fraction, int, int]]:
        return [(s, e.eigenvalue, e.predicted_dim, e.computed_dim)
                for s, e in sorted(self.eigendata.items())]


def _cells_for(ctx: HammingContext, s: int) -> list[tuple[int, int]]:
    D = ctx.D
    return [(i, i + s) for i in range(D + 1) if 0 <= i + s <= D and 2 * i + s >= D]


def _tensor_cell_vectors(ctx: HammingContext, i: int, j: int) -> list[np.ndarray]:
    D = ctx.D
    return [v for pat in patterns(D, D - i, D - j, i + j - D)
            for v in pattern_vectors(ctx, pat)]


def _projections(ctx, slots: dict[int, Eigenslot]) -> dict[int, RMatrix] | None:
    """F_s from the eigenbasis: ``P[:, block_s] @ P^{-1}[block_s, :]``."""
    blocks = [(s, e.eigenspace.matrix) for s, e in sorted(slots.items())]
    P = RMatrix.hstack([b for _, b in blocks], rows=ctx.n_vertices)
    if P.cols != ctx.n_vertices:
        return None
    Q = mat_inverse(P)
    out = {}
    start = 0
    for s, b in blocks:
        stop = start + b.cols
        out[s] = P[:, start:stop] @ Q[start:stop, :]
        start = stop
    return out


# det(C) by fraction-free elimination is the slowest check; above this size
# it is opt-in
DET_MAX_VERTICES = 128


def spectrum(ctx: HammingContext, *, with_determinant: bool | None = None) -> CommutatorSpectrum:
    if with_determinant is None:
        with_determinant = ctx.n_vertices <= DET_MAX_VERTICES

    def make():
        return _spectrum(ctx, with_determinant)
    return ctx.cached(("spectrum", with_determinant), make)


def _spectrum(ctx: HammingContext, with_determinant: bool) -> CommutatorSpectrum:
    D, r, n = ctx.D, ctx.r, ctx.n_vertices
    C = build_commutator(ctx)
    I = RMatrix.identity(n)
    slots: dict[int, Eigenslot] = {}
    for s in range(-D, D + 1):
        lam = eigenvalue(r, s)
        slots[s] = Eigenslot(s, lam, kernel(C - lam * I), predicted_dimension(D, r, s))

    checks: dict[str, bool] = {}
    failures: dict[str, list[int]] = {}

    def record(name, bad):
        checks[name] = not bad
        if bad:
            failures[name] = bad

    record("dims_match_formula",
           [s for s, e in slots.items() if e.computed_dim != e.predicted_dim])
    checks["diagonalizable"] = sum(e.computed_dim for e in slots.values()) == n
    record("eigenspace_is_sum_of_cells", [
        s for s, e in slots.items()
        if e.eigenspace != sum_of((vij_tilde(ctx, i, j).space for i, j in _cells_for(ctx, s)), n)])

    bad = []
    for s in slots:
        lam = eigenvalue(r, s)
        for i, j in _cells_for(ctx, s):
            for v in _tensor_cell_vectors(ctx, i, j):
                col = RMatrix(v.reshape(-1, 1))
                if C @ col != lam * col:
                    bad.append(s)
                    break
            else:
                continue
            break
    record("acts_as_scalar_on_tensor_cells", bad)

    F = _projections(ctx, slots)
    if F is None:
        for name in ("projections_orthogonal_idempotents", "projections_sum_to_identity",
                     "C_is_sum_of_scaled_projections", "projections_commute_with_C",
                     "projection_ranges_are_eigenspaces"):
            checks[name] = False
        F = {}
    else:
        checks["projections_orthogonal_idempotents"] = all(
            (F[s] @ F[t] == F[s]) if s == t else (F[s] @ F[t]).is_zero()
            for s in F for t in F)
        total = RMatrix.zeros(n, n)
        weighted = RMatrix.zeros(n, n)
        for s, f in F.items():
            total = total + f
            weighted = weighted + eigenvalue(r, s) * f
        checks["projections_sum_to_identity"] = total == I
        checks["C_is_sum_of_scaled_projections"] = weighted == C
        record("projections_commute_with_C", [s for s, f in F.items() if f @ C != C @ f])
        record("projection_ranges_are_eigenspaces",
               [s for s, f in F.items() if Subspace.span(f) != slots[s].eigenspace])

    checks["trace_matches_formula"] = C.trace() == sum(
        eigenvalue(r, s) * predicted_dimension(D, r, s) for s in range(-D, D + 1))
    checks["dims_symmetric"] = all(
        slots[s].computed_dim == slots[-s].computed_dim for s in range(1, D + 1))
    if with_determinant:
        checks["det_is_one"] = determinant(C) == 1
    return CommutatorSpectrum(D, r, C, slots, F, checks, failures)


def commutator_checks(ctx: HammingContext) -> dict[str, bool]:
    """Both constructions agree, plus every spectrum certificate."""
    checks = {}
    try:
        build_commutator(ctx)
        checks["direct_equals_kron_power"] = True
    except CommutatorMismatchError:
        checks["direct_equals_kron_power"] = False
        return checks
    checks.update(spectrum(ctx).checks)
    return checks
