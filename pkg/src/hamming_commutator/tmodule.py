"""T-modules of H(D, r): cyclic closures, profiles, irreducibility, and the
action of the commutator C on irreducible modules.

T is generated by A and A*. Both are symmetric, so the orthogonal complement
of a submodule inside a module is again a module. That gives two facts used
below:

* a module is irreducible iff the commutant of {A, A*} on it is the scalars
  (a proper submodule contributes its orthogonal projection), and
* a reducible module splits as ``U + (U^perp within W)`` once any proper
  submodule ``U`` is found.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .commutator import CommutatorSpectrum, eigenvalue
from .complete_graph import e1_basis
from .exact_linalg import (
    RMatrix,
    Subspace,
    commutant_dim,
    kernel,
    orth_complement_within,
    rank,
    restrict,
    sum_of,
)
from .hamming import HammingContext
from .split_decomposition import v_eta


class ReducibleModuleError(ValueError):
    pass


@dataclass(frozen=True)
class Profile:
    endpoint: int
    dual_endpoint: int
    diameter: int
    dual_diameter: int
    displacement: int
    thin: bool
    star_dims: tuple[int, ...]
    flat_dims: tuple[int, ...]

    @property
    def key(self) -> tuple[int, int, int]:
        """(endpoint, dual endpoint, diameter), used to group modules by type."""
        return self.endpoint, self.dual_endpoint, self.diameter


@dataclass(frozen=True, eq=False)
class TModule:
    space: Subspace
    profile: Profile
    irreducible: bool
    # None when a proper submodule was found without solving the commutant system
    commutant_dim: int | None = None

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True, eq=False)
class Thm36Certificate:
    module: TModule
    dims: dict[int, int]            # s -> dim F_s W
    restricted_dims: dict[int, int]  # s -> dim ker(C|W - (1-r)^s)
    passed: bool


@dataclass(eq=False)
class Survey:
    certificates: list[Thm36Certificate]
    checks: dict[str, bool]
    coverage: dict[int, tuple[int, int]]  # eta -> (harvested span dim, dim V_eta)
    unresolved: list[Subspace] = field(default_factory=list)
    n_seeds: int = 0

    @property
    def modules(self) -> list[TModule]:
        return [c.module for c in self.certificates]

    def patterns(self) -> dict[tuple[int, int, int], int]:
        out: dict[tuple[int, int, int], int] = {}
        for m in self.modules:
            out[m.profile.key] = out.get(m.profile.key, 0) + 1
        return dict(sorted(out.items()))


# -- profiles -------------------------------------------------------------------------

def _star_mask(ctx: HammingContext, i: int) -> np.ndarray:
    return ctx.weights == i


def _star_image(ctx: HammingContext, i: int, m: RMatrix) -> RMatrix:
    """E_i* m, using that E_i* is the 0/1 diagonal of the weight-i vertices."""
    num = m.num.copy()
    num[~_star_mask(ctx, i)] = 0
    return RMatrix(num, m.den)


def profile_of(ctx: HammingContext, w: Subspace) -> Profile:
    D = ctx.D
    star = tuple(rank(_star_image(ctx, i, w.matrix)) for i in range(D + 1))
    flat = tuple(rank(ctx.idempotents[i] @ w.matrix) for i in range(D + 1))
    s_supp = [i for i, d in enumerate(star) if d]
    f_supp = [i for i, d in enumerate(flat) if d]
    if not s_supp:
        raise ValueError("profile of the zero module")
    rho, tau = s_supp[0], f_supp[0]
    d = len(s_supp) - 1
    return Profile(endpoint=rho, dual_endpoint=tau, diameter=d,
                   dual_diameter=len(f_supp) - 1, displacement=rho + tau + d - D,
                   thin=all(x <= 1 for x in star), star_dims=star, flat_dims=flat)


# -- construction -----------------------------------------------------------------

def _as_column(ctx: HammingContext, v) -> RMatrix:
    m = v if isinstance(v, RMatrix) else RMatrix(np.asarray(v, dtype=object).reshape(-1, 1))
    if m.shape != (ctx.n_vertices, 1):
        raise ValueError(f"seed must be a vector of length {ctx.n_vertices}, got shape {m.shape}")
    return m


def _neighbors(ctx: HammingContext) -> np.ndarray:
    """Row y lists the vertices adjacent to y (every vertex has D(r-1) of them)."""
    def make():
        adj = ctx.A.num.astype(bool)
        return np.array([np.flatnonzero(row) for row in adj])
    return ctx.cached("neighbors", make)


def apply_generators(ctx: HammingContext, m: RMatrix) -> tuple[RMatrix, RMatrix]:
    """``(A m, A* m)`` using sparsity: A by neighbour sums, A* as a diagonal."""
    a = RMatrix(m.num[_neighbors(ctx)].sum(axis=1), m.den)
    As = ctx.Astar
    diag = np.diagonal(As.num).reshape(-1, 1)
    return a, RMatrix(diag * m.num, As.den * m.den)


def _is_module(ctx: HammingContext, w: Subspace) -> bool:
    a, s = apply_generators(ctx, w.matrix)
    return rank(RMatrix.hstack([w.matrix, a, s])) == w.dim


def closure(ctx: HammingContext, vectors: RMatrix) -> Subspace:
    """Smallest A- and A*-invariant subspace containing the given columns."""
    w = Subspace.span(vectors)
    frontier = w.matrix
    while frontier.cols:
        a, s = apply_generators(ctx, frontier)
        grown = Subspace.span(RMatrix.hstack([w.matrix, a, s]))
        if grown.dim == w.dim:
            break
        # only images of new directions can enlarge the span further
        frontier = grown.matrix[:, w.dim:] if _prefix_kept(w, grown) else grown.matrix
        w = grown
    if not _is_module(ctx, w):
        raise AssertionError("closure is not invariant under A and A*")
    return w


def _prefix_kept(old: Subspace, new: Subspace) -> bool:
    # Subspace.span keeps pivot columns in order, so the old basis survives as a prefix
    return new.matrix[:, :old.dim] == old.matrix


def _module(ctx: HammingContext, w: Subspace, *, probed: bool = False) -> TModule:
    # probed=True: the caller already knows probing finds no proper submodule
    if not probed and _proper_submodule(ctx, w) is not None:
        return TModule(w, profile_of(ctx, w), False)
    cd = commutant_dim([ctx.A, ctx.Astar], w, ["A", "A*"])
    return TModule(w, profile_of(ctx, w), cd == 1, cd)


def cyclic_module(ctx: HammingContext, v) -> TModule:
    col = _as_column(ctx, v)
    if col.is_zero():
        raise ValueError("cyclic module of the zero vector")
    return _module(ctx, closure(ctx, col))


def primary_module(ctx: HammingContext) -> TModule:
    """Module with basis ``A_i x`` for 0 <= i <= D."""
    x = ctx.xhat()
    w = Subspace(RMatrix.hstack([a @ x for a in ctx.dist_matrices]))
    if not _is_module(ctx, w):
        raise AssertionError("span of A_i x is not a T-module")
    return _module(ctx, w)


# -- irreducibility -----------------------------------------------------------------

def _probe_vectors(ctx: HammingContext, w: Subspace):
    """Basis vectors of each E_i* W and E_i W, the natural places where
    distinct summands separate."""
    for i in range(ctx.D + 1):
        for m in (_star_image(ctx, i, w.matrix), ctx.idempotents[i] @ w.matrix):
            if not m.is_zero():
                yield from Subspace.span(m).basis


def _proper_submodule(ctx: HammingContext, w: Subspace) -> Subspace | None:
    if w.dim <= 1:
        return None
    best = None
    for u in _probe_vectors(ctx, w):
        if best is not None and best.contains_vector(u):
            continue
        sub = closure(ctx, u)
        if sub.dim < w.dim and (best is None or sub.dim < best.dim):
            best = sub
            if best.dim == 1:
                break
    return best


def is_irreducible(ctx: HammingContext, w: TModule) -> bool:
    if not _is_module(ctx, w.space):
        raise ValueError("not a T-module: not invariant under A and A*")
    if w.dim == 0:
        return False
    if _proper_submodule(ctx, w.space) is not None:
        return False
    return commutant_dim([ctx.A, ctx.Astar], w.space, ["A", "A*"]) == 1


def decompose(ctx: HammingContext, w: Subspace) -> tuple[list[TModule], list[Subspace]]:
    """Split a module into irreducibles by peeling off proper submodules.

    Returns (irreducible modules, pieces that could not be split by probing
    but still have a nontrivial commutant).
    """
    sub = _proper_submodule(ctx, w)
    if sub is None:
        m = _module(ctx, w, probed=True)
        return ([m], []) if m.irreducible else ([], [w])
    rest = orth_complement_within(sub, w)
    a_irr, a_bad = decompose(ctx, sub)
    b_irr, b_bad = decompose(ctx, rest)
    return a_irr + b_irr, a_bad + b_bad


# -- the commutator on a module ------------------------------------------------------

def admissible(d: int, s: int) -> bool:
    return abs(s) <= d and (d - s) % 2 == 0


def certify_thm36(ctx: HammingContext, spec: CommutatorSpectrum, w: TModule) -> Thm36Certificate:
    if not w.irreducible:
        raise ReducibleModuleError("certify_thm36 needs an irreducible module")
    D, r = ctx.D, ctx.r
    d = w.profile.diameter
    basis = w.space.matrix
    dims = {s: rank(spec.projections[s] @ basis) for s in range(-D, D + 1)}
    cw = restrict(spec.C, w.space, "C")
    k = w.dim
    restricted = {s: kernel(cw - eigenvalue(r, s) * RMatrix.identity(k)).dim
                  for s in range(-D, D + 1)}
    pattern = all((dims[s] == 1) if admissible(d, s) else (dims[s] == 0) for s in dims)
    simple = all((restricted[s] == 1) if admissible(d, s) else (restricted[s] == 0)
                 for s in restricted)
    ok = pattern and simple and sum(dims.values()) == k == d + 1
    return Thm36Certificate(w, dims, restricted, ok)


# -- seed survey --------------------------------------------------------------------

def _slot_choices(ctx: HammingContext) -> list[np.ndarray]:
    r = ctx.r
    x = np.zeros(r, dtype=np.int64)
    x[0] = 1
    chain = e1_basis(ctx.kr).matrix.num.astype(np.int64)
    return [x, np.ones(r, dtype=np.int64)] + [chain[:, k] for k in range(chain.shape[1])]


def seeds(ctx: HammingContext, *, random_seeds: int = 0, rng=None) -> list[np.ndarray]:
    """Deterministic seed list: base indicator, every pure tensor of slot
    choices, and their nonzero E_i* projections. ``random_seeds`` appends
    random small-integer vectors drawn from ``rng``."""
    n = ctx.n_vertices
    base = np.zeros(n, dtype=np.int64)
    base[0] = 1
    out = [base]
    per_slot = _slot_choices(ctx)
    for choice in itertools.product(per_slot, repeat=ctx.D):
        v = np.ones(1, dtype=np.int64)
        for f in choice:
            v = np.kron(v, f)
        out.append(v)
        for i in range(ctx.D + 1):
            p = np.where(ctx.weights == i, v, 0)
            if p.any() and not np.array_equal(p, v):
                out.append(p)
    if random_seeds:
        rng = rng if rng is not None else np.random.default_rng(0)
        out.extend(rng.integers(-3, 4, size=(random_seeds, n)))
    return out


def _dedupe_key(v: np.ndarray) -> bytes:
    return np.asarray(v, dtype=np.int64).tobytes()


def seed_survey(ctx: HammingContext, spec: CommutatorSpectrum, *,
                random_seeds: int = 0, rng=None) -> Survey:
    D, n = ctx.D, ctx.n_vertices
    seen_seeds = set()
    # columns spanning the orthogonal complement of everything decomposed so far;
    # a seed v is already covered iff N^t v = 0
    annihilator = RMatrix.identity(n)
    harvested: list[TModule] = []
    unresolved: list[Subspace] = []
    seed_list = seeds(ctx, random_seeds=random_seeds, rng=rng)

    def add(mod: TModule):
        if not any(h.dim == mod.dim and h.space == mod.space for h in harvested):
            harvested.append(mod)

    for v in seed_list:
        key = _dedupe_key(v)
        if key in seen_seeds or not np.any(v):
            continue
        seen_seeds.add(key)
        col = RMatrix(np.asarray(v, dtype=object).reshape(-1, 1))
        if annihilator.cols == 0 or (annihilator.T @ col).is_zero():
            # already in the span of the decomposed closures
            continue
        w = closure(ctx, col)
        annihilator = annihilator @ kernel(w.matrix.T @ annihilator).matrix
        irr, bad = decompose(ctx, w)
        for m in irr:
            add(m)
        unresolved.extend(bad)

    certs = [certify_thm36(ctx, spec, m) for m in harvested]
    profiles = [m.profile for m in harvested]
    etas = {e: v_eta(ctx, e) for e in range(D + 1)}
    checks = {
        "all_harvested_irreducible": all(m.irreducible for m in harvested),
        "no_unresolved_closures": not unresolved,
        "primary_module_harvested": any(
            m.space == primary_module(ctx).space for m in harvested),
        "endpoint_eq_dual_endpoint": all(p.endpoint == p.dual_endpoint for p in profiles),
        "diameter_eq_dual_diameter": all(p.diameter == p.dual_diameter for p in profiles),
        "thin": all(p.thin for p in profiles),
        "displacement_in_range": all(0 <= p.displacement <= D for p in profiles),
        "contained_in_V_displacement": all(
            etas[m.profile.displacement].contains(m.space) for m in harvested
            if 0 <= m.profile.displacement <= D),
        "thm36_pattern": all(c.passed for c in certs),
        "nonisomorphic_orthogonal": all(
            a.space.is_orthogonal_to(b.space)
            for a, b in itertools.combinations(harvested, 2)
            if a.profile.key != b.profile.key),
    }
    coverage = {}
    for e, ve in etas.items():
        span = sum_of((m.space for m in harvested if m.profile.displacement == e), n)
        coverage[e] = (span.dim, ve.dim)
    if all(got == want for got, want in coverage.values()):
        checks["harvest_spans_each_V_eta"] = True
    return Survey(certs, checks, coverage, unresolved, len(seen_seeds))


def tmodule_checks(ctx: HammingContext, spec: CommutatorSpectrum) -> tuple[dict[str, bool], Survey]:
    survey = seed_survey(ctx, spec)
    prim = primary_module(ctx)
    p = prim.profile
    checks = {
        "primary_irreducible": prim.irreducible,
        "primary_thin_endpoints_zero": (
            p.thin and p.endpoint == 0 and p.dual_endpoint == 0
            and p.diameter == ctx.D and p.displacement == 0),
        **survey.checks,
    }
    return checks, survey
