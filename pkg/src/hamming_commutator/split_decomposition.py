"""Split decomposition of the standard module of H(D, r).

The cells ``V~_ij`` are built two independent ways:

* :func:`vij_tilde` takes the filtration ``V_ij`` (intersection of a partial
  sum of ``E_k* V`` with a partial sum of ``E_k V``) and the orthogonal
  complement of ``V_{i-1,j} + V_{i,j-1}`` inside it.
* :func:`vij_tilde_tensor` spans Kronecker products of the K_r pieces
  ``E0* V = <x>``, ``E0 V = <1>`` and ``e1 V`` according to slot patterns.

Agreement of the two is a real check, not a tautology.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .complete_graph import e1_basis
from .exact_linalg import (
    RMatrix,
    Subspace,
    orth_complement_within,
    subspace_intersect,
    subspace_sum,
    sum_of,
)
from .hamming import HammingContext


class Slot(enum.IntEnum):
    STAR = 0   # E0* V, spanned by x-hat
    FLAT = 1   # E0 V, spanned by the all-ones vector
    E1 = 2     # e1 V, the chain basis


@dataclass(frozen=True)
class TensorPattern:
    slots: tuple[Slot, ...]

    @property
    def alpha(self) -> int:
        return self.slots.count(Slot.STAR)

    @property
    def beta(self) -> int:
        return self.slots.count(Slot.FLAT)

    @property
    def eta(self) -> int:
        """Displacement: number of e1 V slots."""
        return self.slots.count(Slot.E1)

    def __str__(self) -> str:
        return "".join("*" if s is Slot.STAR else "1" if s is Slot.FLAT else "e" for s in self.slots)


@dataclass(frozen=True, eq=False)
class SplitCell:
    i: int
    j: int
    space: Subspace
    predicted_dim: int

    @property
    def dim(self) -> int:
        return self.space.dim


def predicted_cell_dim(D: int, r: int, i: int, j: int) -> int:
    """``C(D,i) C(i,D-j) (r-2)^(i+j-D)``, or 0 when ``i + j < D``."""
    if i + j < D:
        return 0
    return comb(D, i) * comb(i, D - j) * (r - 2) ** (i + j - D)


def patterns(D: int, alpha: int, beta: int, eta: int) -> list[TensorPattern]:
    """All slot sequences with the given counts, in lexicographic order."""
    if min(alpha, beta, eta) < 0 or alpha + beta + eta != D:
        return []
    return [TensorPattern(s) for s in itertools.product(Slot, repeat=D)
            if s.count(Slot.STAR) == alpha and s.count(Slot.FLAT) == beta]


def _slot_vectors(ctx: HammingContext) -> dict[Slot, list[np.ndarray]]:
    r = ctx.r
    x = np.zeros(r, dtype=np.int64)
    x[0] = 1
    chain = e1_basis(ctx.kr).matrix.num.astype(np.int64)
    return {
        Slot.STAR: [x],
        Slot.FLAT: [np.ones(r, dtype=np.int64)],
        Slot.E1: [chain[:, k] for k in range(chain.shape[1])],
    }


def pattern_vectors(ctx: HammingContext, pattern: TensorPattern) -> list[np.ndarray]:
    per_slot = _slot_vectors(ctx)
    out = []
    for choice in itertools.product(*(per_slot[s] for s in pattern.slots)):
        v = np.ones(1, dtype=np.int64)
        for f in choice:
            v = np.kron(v, f)
        out.append(v)
    return out


def _span_columns(ctx: HammingContext, vectors) -> Subspace:
    if not vectors:
        return Subspace.zero(ctx.n_vertices)
    return Subspace.span(RMatrix(np.stack(vectors, axis=1)))


# -- filtration route ------------------------------------------------------------

def star_partial_sum(ctx: HammingContext, i: int) -> Subspace:
    """``E0* V + ... + E_i* V``: coordinates of vertices within distance i."""
    def make():
        n = ctx.n_vertices
        if i < 0:
            return Subspace.zero(n)
        diag = sum(ctx.dual_idempotents[1:i + 1], ctx.dual_idempotents[0])
        keep = [y for y in range(n) if diag[y, y] != 0]
        cols = np.zeros((n, len(keep)), dtype=np.int64)
        cols[keep, range(len(keep))] = 1
        return Subspace(RMatrix(cols), check=False)
    return ctx.cached(("star_sum", i), make)


def flat_partial_sum(ctx: HammingContext, j: int) -> Subspace:
    """``E0 V + ... + E_j V`` as the column space of the summed projections."""
    def make():
        if j < 0:
            return Subspace.zero(ctx.n_vertices)
        return Subspace.span(sum(ctx.idempotents[1:j + 1], ctx.idempotents[0]))
    return ctx.cached(("flat_sum", j), make)


def _check_index(ctx: HammingContext, i: int, j: int, low: int):
    if not (low <= i <= ctx.D and low <= j <= ctx.D):
        raise IndexError(f"cell ({i}, {j}) outside {low}..{ctx.D}")


def vij(ctx: HammingContext, i: int, j: int) -> Subspace:
    _check_index(ctx, i, j, -1)
    if i == -1 or j == -1:
        return Subspace.zero(ctx.n_vertices)
    return ctx.cached(("vij", i, j), lambda: subspace_intersect(
        star_partial_sum(ctx, i), flat_partial_sum(ctx, j)))


def vij_tilde(ctx: HammingContext, i: int, j: int) -> SplitCell:
    _check_index(ctx, i, j, 0)

    def make():
        inner = subspace_sum(vij(ctx, i - 1, j), vij(ctx, i, j - 1))
        return orth_complement_within(inner, vij(ctx, i, j))
    space = ctx.cached(("vij_tilde", i, j), make)
    return SplitCell(i, j, space, predicted_cell_dim(ctx.D, ctx.r, i, j))


def v_eta(ctx: HammingContext, eta: int) -> Subspace:
    """Sum of the cells with ``i + j = eta + D``."""
    if not 0 <= eta <= ctx.D:
        raise IndexError(f"displacement {eta} outside 0..{ctx.D}")
    D = ctx.D
    return ctx.cached(("v_eta", eta), lambda: sum_of(
        (vij_tilde(ctx, i, eta + D - i).space
         for i in range(eta, D + 1)), ctx.n_vertices))


# -- tensor route ------------------------------------------------------------------

def vij_tilde_tensor(ctx: HammingContext, i: int, j: int) -> Subspace:
    """Span of the tensor summands with ``alpha = D-i, beta = D-j, eta = i+j-D``."""
    _check_index(ctx, i, j, 0)
    D = ctx.D
    vecs = [v for pat in patterns(D, D - i, D - j, i + j - D) for v in pattern_vectors(ctx, pat)]
    return _span_columns(ctx, vecs)


def v_eta_tensor(ctx: HammingContext, eta: int) -> Subspace:
    D = ctx.D
    vecs = [v for a in range(D - eta + 1)
            for pat in patterns(D, a, D - eta - a, eta)
            for v in pattern_vectors(ctx, pat)]
    return _span_columns(ctx, vecs)


# -- certificate -------------------------------------------------------------------

def split_checks(ctx: HammingContext) -> dict[str, bool]:
    D, n = ctx.D, ctx.n_vertices
    cells = {(i, j): vij_tilde(ctx, i, j) for i in range(D + 1) for j in range(D + 1)}
    checks: dict[str, bool] = {}
    checks["vij_boundary_zero"] = all(
        vij(ctx, -1, k).dim == 0 and vij(ctx, k, -1).dim == 0 for k in range(-1, D + 1))
    checks["vij_top_is_V"] = vij(ctx, D, D).dim == n
    checks["filtration_monotone"] = all(
        vij(ctx, i, j).contains(subspace_sum(vij(ctx, i - 1, j), vij(ctx, i, j - 1)))
        for i in range(D + 1) for j in range(D + 1))
    checks["cell_dims_match_formula"] = all(c.dim == c.predicted_dim for c in cells.values())
    checks["cells_vanish_below_antidiagonal"] = all(
        c.dim == 0 for (i, j), c in cells.items() if i + j < D)
    checks["cells_complete"] = sum(c.dim for c in cells.values()) == n
    checks["cells_span_V"] = sum_of((c.space for c in cells.values()), n).dim == n
    checks["cells_match_tensor_construction"] = all(
        c.space == vij_tilde_tensor(ctx, i, j) for (i, j), c in cells.items())
    etas = [v_eta(ctx, e) for e in range(D + 1)]
    checks["v_eta_matches_tensor_construction"] = all(
        etas[e] == v_eta_tensor(ctx, e) for e in range(D + 1))
    checks["v_eta_orthogonal"] = all(
        etas[a].is_orthogonal_to(etas[b]) for a in range(D + 1) for b in range(a + 1, D + 1))
    checks["v_eta_complete"] = sum(v.dim for v in etas) == n
    checks["cell_is_vij_cap_v_eta"] = all(
        c.space == subspace_intersect(vij(ctx, i, j), etas[i + j - D])
        for (i, j), c in cells.items() if i + j >= D)
    return checks
