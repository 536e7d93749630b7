import numpy as np
import pytest

from conftest import hamming
from hamming_commutator.commutator import spectrum
from hamming_commutator.exact_linalg import RMatrix, Subspace, commutant_dim
from hamming_commutator.split_decomposition import v_eta
from hamming_commutator.tmodule import (
    ReducibleModuleError,
    TModule,
    certify_thm36,
    cyclic_module,
    decompose,
    is_irreducible,
    primary_module,
    profile_of,
    seed_survey,
)


def full_module(ctx):
    v = Subspace.full(ctx.n_vertices)
    return TModule(v, profile_of(ctx, v), False)


def test_zero_seed_rejected():
    with pytest.raises(ValueError, match="zero"):
        cyclic_module(hamming(1, 3), [0, 0, 0])


def test_base_indicator_gives_primary():
    ctx = hamming(3, 3)
    m = cyclic_module(ctx, ctx.xhat())
    assert m.space == primary_module(ctx).space
    want = Subspace(RMatrix.hstack([a @ ctx.xhat() for a in ctx.dist_matrices]))
    assert m.space == want and m.dim == 4


def test_nonprimary_H13():
    m = cyclic_module(hamming(1, 3), [0, 1, -1])
    assert m.dim == 1 and m.irreducible
    assert m.profile.endpoint == 1 and m.profile.diameter == 0


def test_seed_inside_V_eta_H23():
    ctx = hamming(2, 3)
    seed = np.kron([1, 0, 0], [0, 1, -1])
    m = cyclic_module(ctx, seed)
    assert v_eta(ctx, m.profile.displacement).contains(m.space)


@pytest.mark.parametrize("D,r", [(1, 3), (2, 3), (3, 4)])
def test_primary_profile(D, r):
    p = primary_module(hamming(D, r)).profile
    assert (p.endpoint, p.dual_endpoint, p.diameter, p.displacement) == (0, 0, D, 0)
    assert p.thin and p.star_dims == (1,) * (D + 1)


def test_irreducibility():
    ctx = hamming(2, 3)
    assert is_irreducible(ctx, primary_module(ctx))
    full = full_module(hamming(1, 3))
    assert not is_irreducible(hamming(1, 3), full)
    assert commutant_dim([hamming(1, 3).A, hamming(1, 3).Astar], full.space) == 2


def test_not_a_module():
    ctx = hamming(1, 3)
    bad = Subspace(RMatrix.column([1, 0, 0]))
    with pytest.raises(ValueError):
        is_irreducible(ctx, TModule(bad, profile_of(ctx, bad), False))


def test_certify_primary_H23():
    ctx = hamming(2, 3)
    cert = certify_thm36(ctx, spectrum(ctx), primary_module(ctx))
    assert cert.passed
    assert {s for s, d in cert.dims.items() if d} == {-2, 0, 2}
    assert all(d in (0, 1) for d in cert.dims.values())


def test_certify_rejects_reducible():
    ctx = hamming(1, 3)
    with pytest.raises(ReducibleModuleError):
        certify_thm36(ctx, spectrum(ctx), full_module(ctx))


def test_dim_zero_diameter_module_fixed_by_C():
    ctx = hamming(1, 4)
    m = cyclic_module(ctx, [0, 1, -1, 0])
    cert = certify_thm36(ctx, spectrum(ctx), m)
    assert cert.dims == {-1: 0, 0: 1, 1: 0}
    assert spectrum(ctx).C @ m.space.matrix == m.space.matrix


def test_survey_H13_two_patterns():
    ctx = hamming(1, 3)
    s = seed_survey(ctx, spectrum(ctx))
    pats = {(m.profile.diameter, tuple(k for k, d in c.dims.items() if d))
            for m, c in zip(s.modules, s.certificates)}
    assert pats == {(1, (-1, 1)), (0, (0,))}


def test_survey_H23():
    ctx = hamming(2, 3)
    s = seed_survey(ctx, spectrum(ctx))
    assert all(s.checks.values()), s.checks
    d1 = [c for c in s.certificates if c.module.profile.diameter == 1]
    assert d1 and all({k for k, d in c.dims.items() if d} == {-1, 1} for c in d1)
    for e, (got, want) in s.coverage.items():
        assert got <= want == v_eta(ctx, e).dim


def test_decompose_full_module_H23():
    # V of H(2,3) splits into irreducibles whose dimensions add up to 9
    ctx = hamming(2, 3)
    irr, bad = decompose(ctx, Subspace.full(9))
    assert not bad
    assert sum(m.dim for m in irr) == 9
    assert all(m.profile.thin for m in irr)


def test_random_seeds_flag():
    ctx = hamming(2, 3)
    s = seed_survey(ctx, spectrum(ctx), random_seeds=3, rng=np.random.default_rng(1))
    assert all(s.checks.values())
