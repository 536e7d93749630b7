"""Acceptance criteria, one test each. Run with ``pytest tests/test_acceptance.py``;
the terminal summary prints a pass/fail line per criterion."""

import time
from fractions import Fraction
from math import comb

import pytest
import sympy

from conftest import hamming, to_sympy
from hamming_commutator.cli import format_eigentable
from hamming_commutator.commutator import predicted_dimension, spectrum
from hamming_commutator.complete_graph import build_kr, verify_kr
from hamming_commutator.exact_linalg import RMatrix, kron_power, mat_inverse, sum_of
from hamming_commutator.hamming import (
    axiom_checks,
    build_hamming,
    invertibility_checks,
    parameter_tables,
)
from hamming_commutator.split_decomposition import (
    predicted_cell_dim,
    v_eta,
    vij_tilde,
    vij_tilde_tensor,
)
from hamming_commutator.tmodule import certify_thm36, primary_module, seed_survey

GRID = [(D, r) for D in range(1, 5) for r in range(3, 6) if r ** D <= 256]
SPLIT_GRID = [(2, 3), (3, 3), (2, 4), (2, 5)]
MODULE_GRID = [(1, 3), (1, 4), (2, 3), (3, 3)]


@pytest.mark.acceptance(1, "K_r identities, dim T = 5, commutator eigendata (r = 3, 4, 5, 7; < 1 s)")
def test_criterion_1_kr_suite():
    start = time.perf_counter()
    for r in (3, 4, 5, 7):
        rep = verify_kr(build_kr(r))
        assert rep.passed, (r, [k for k, v in rep.flags.items() if not v])
        assert rep.dim_T == 5
        assert sorted(rep.commutator_eigendata) == sorted(
            [(Fraction(1 - r), 1), (1 / Fraction(1 - r), 1), (Fraction(1), r - 2)])
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "Hamming axioms, Krein, Q-polynomial, invertibility on the grid (< 2 min)")
def test_criterion_2_hamming_axioms():
    start = time.perf_counter()
    for D, r in GRID:
        ctx = build_hamming(D, r, verify=False)
        checks = {**axiom_checks(ctx), **invertibility_checks(ctx),
                  **parameter_tables(ctx).checks}
        assert all(checks.values()), ((D, r), [k for k, v in checks.items() if not v])
        for key in ("krein_nonnegative", "q_polynomial_vanishing",
                    "q_polynomial_nonvanishing", "A_last_invertible", "Astar_last_invertible"):
            assert checks[key]
    assert time.perf_counter() - start < 120.0


@pytest.mark.acceptance(3, "split cells: intersection route equals tensor route, formula dims, total r^D")
@pytest.mark.parametrize("D,r", SPLIT_GRID)
def test_criterion_3_split_oracle(D, r):
    ctx = hamming(D, r)
    total = 0
    for i in range(D + 1):
        for j in range(D + 1):
            cell = vij_tilde(ctx, i, j)
            assert cell.space == vij_tilde_tensor(ctx, i, j), (i, j)
            assert cell.dim == predicted_cell_dim(D, r, i, j) == (
                comb(D, i) * comb(i, D - j) * (r - 2) ** (i + j - D) if i + j >= D else 0)
            total += cell.dim
    assert total == r ** D


@pytest.mark.acceptance(4, "commutator diagonalizable, eigenspaces = cell sums, F_s identities")
@pytest.mark.parametrize("D,r", SPLIT_GRID)
def test_criterion_4_commutator_spectrum(D, r):
    ctx = hamming(D, r)
    sp = spectrum(ctx)
    n = r ** D
    assert sum(e.computed_dim for e in sp.eigendata.values()) == n
    for s, e in sp.eigendata.items():
        assert e.eigenvalue == Fraction(1 - r) ** s
        assert e.computed_dim == e.predicted_dim == predicted_dimension(D, r, s)
        cells = [vij_tilde(ctx, i, i + s).space for i in range(D + 1)
                 if 0 <= i + s <= D and 2 * i + s >= D]
        assert e.eigenspace == sum_of(cells, n)
    F = sp.projections
    I = RMatrix.identity(n)
    for s in F:
        for t in F:
            assert F[s] @ F[t] == (F[s] if s == t else RMatrix.zeros(n, n))
    assert sum(F.values(), RMatrix.zeros(n, n)) == I
    assert sum((Fraction(1 - r) ** s * f for s, f in F.items()), RMatrix.zeros(n, n)) == sp.C
    if (D, r) == (2, 3):
        # independent kernel computation in sympy
        C = to_sympy(sp.C)
        dims = [len((C - sympy.Rational(1 - r) ** s * sympy.eye(n)).nullspace())
                for s in range(-2, 3)]
        assert dims == [1, 2, 3, 2, 1]
        assert [sp.eigendata[s].computed_dim for s in range(-2, 3)] == dims


@pytest.mark.acceptance(5, "harvested irreducible modules: F_sW pattern, rho = tau, thin, W in V_eta")
@pytest.mark.parametrize("D,r", MODULE_GRID)
def test_criterion_5_commutator_on_modules(D, r):
    ctx = hamming(D, r)
    sp = spectrum(ctx)
    survey = seed_survey(ctx, sp)
    assert survey.certificates
    for cert in survey.certificates:
        m = cert.module
        p = m.profile
        d = p.diameter
        assert m.irreducible
        assert cert.passed
        for s, dim in cert.dims.items():
            assert dim == (1 if abs(s) <= d and (d - s) % 2 == 0 else 0)
        assert p.endpoint == p.dual_endpoint
        assert p.thin
        assert v_eta(ctx, p.displacement).contains(m.space)
    prim = primary_module(ctx)
    assert any(m.space == prim.space for m in survey.modules)
    cert = certify_thm36(ctx, sp, prim)
    assert cert.passed and prim.profile.diameter == D


@pytest.mark.acceptance(6, "direct-inversion commutator equals Kronecker-power commutator on the grid")
@pytest.mark.parametrize("D,r", GRID)
def test_criterion_6_dual_construction(D, r):
    ctx = hamming(D, r)
    direct = (mat_inverse(ctx.A_last) @ mat_inverse(ctx.Astar_last)
              @ ctx.A_last @ ctx.Astar_last)
    kr = build_kr(r)
    small = mat_inverse(kr.A) @ mat_inverse(kr.Astar) @ kr.A @ kr.Astar
    assert direct == kron_power(small, D)


@pytest.mark.acceptance(7, "eigentable(10, 5) dimensions sum to 5^10 from the formula alone (< 1 s)")
def test_criterion_7_formula_scaling():
    start = time.perf_counter()
    text = format_eigentable(10, 5)
    dims = [int(line.split()[2]) for line in text.splitlines()[1:-1]]
    assert len(dims) == 21
    assert sum(dims) == 5 ** 10
    assert time.perf_counter() - start < 1.0
