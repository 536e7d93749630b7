from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hamming_commutator.exact_linalg import (
    ContainmentError,
    DimensionMismatchError,
    InvarianceError,
    RMatrix,
    SingularMatrixError,
    Subspace,
    commutant_dim,
    kernel,
    kron,
    mat_inverse,
    mat_mul,
    orth_complement_within,
    rank,
    rref_bareiss,
    rref_modular,
    subspace_intersect,
    subspace_sum,
)


def brute_product(a, b):
    fa, fb = a.to_fractions(), b.to_fractions()
    return [[sum((fa[i][k] * fb[k][j] for k in range(len(fb))), Fraction(0))
             for j in range(len(fb[0]))] for i in range(len(fa))]


def sympy_of(m: RMatrix):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in m.to_fractions()])


def col(*xs):
    return RMatrix.column(xs)


I3 = RMatrix.identity(3)
J3 = RMatrix.ones(3)
A3 = J3 - I3


# -- strategies ---------------------------------------------------------------

fractions_small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def rmatrices(draw, rows=None, cols=None, max_dim=4):
    m = draw(st.integers(1, max_dim)) if rows is None else rows
    n = draw(st.integers(1, max_dim)) if cols is None else cols
    entries = draw(st.lists(fractions_small, min_size=m * n, max_size=m * n))
    return RMatrix.from_rows([entries[i * n:(i + 1) * n] for i in range(m)])


@st.composite
def low_rank_ints(draw, max_rows=9, max_cols=9):
    """Integer matrices that are frequently rank deficient."""
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    k = draw(st.integers(1, min(m, n)))
    left = np.array(draw(st.lists(st.integers(-3, 3), min_size=m * k, max_size=m * k)),
                    dtype=object).reshape(m, k)
    right = np.array(draw(st.lists(st.integers(-3, 3), min_size=k * n, max_size=k * n)),
                     dtype=object).reshape(k, n)
    return left.dot(right)


# -- RMatrix basics -------------------------------------------------------------

def test_canonical_form():
    m = RMatrix(np.array([[2, 4], [6, 8]]), 4)
    assert m.den == 2 and m.num.tolist() == [[1, 2], [3, 4]]
    assert RMatrix(np.array([[1]]), -2)[0, 0] == Fraction(-1, 2)
    assert RMatrix.from_rows([["1/2", 1]]) == RMatrix(np.array([[1, 2]]), 2)


def test_immutable():
    m = RMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.den = 3
    with pytest.raises(ValueError):
        m.num[0, 0] = 5


def test_identity_product():
    m = RMatrix.from_rows([[1, "2/3", 0], [-1, 5, "1/7"], [0, 0, 2]])
    assert mat_mul(I3, m) == m
    assert m @ I3 == m


def test_complete_graph_square():
    # (J - I)^2 = (r - 2) J + I for r = 3, checked against a triple loop
    assert brute_product(A3, A3) == (J3 + I3).to_fractions()
    assert A3 @ A3 == J3 + I3


def test_k3_idempotents_annihilate():
    e0 = J3 / 3
    e1 = I3 - e0
    assert (e0 @ e1).is_zero()
    assert brute_product(e0, e1) == [[0] * 3] * 3


def test_mat_mul_shape_error():
    with pytest.raises(DimensionMismatchError, match="2x3.*2x3"):
        mat_mul(RMatrix.zeros(2, 3), RMatrix.zeros(2, 3))


def test_int64_fallback_is_exact():
    big = RMatrix(np.array([[2**40, 1], [3, 2**40]]))
    p = big @ big
    assert p.to_fractions() == brute_product(big, big)


# -- inverse ---------------------------------------------------------------------

def test_inverse_identity():
    assert mat_inverse(I3) == I3


def test_inverse_complete_graph_adjacency():
    # A^2 = (r-2)A + (r-1)I gives A^{-1} = (A - (r-2)I)/(r-1)
    assert brute_product(A3, A3) == (A3 + 2 * I3).to_fractions()
    expected = (A3 - I3) / 2
    assert A3 @ expected == I3
    assert mat_inverse(A3) == expected


def test_inverse_singular_projection():
    e1 = I3 - J3 / 3
    with pytest.raises(SingularMatrixError) as info:
        mat_inverse(e1)
    assert info.value.rank == 2
    assert "singular" in str(info.value)


# -- kron ------------------------------------------------------------------------

def test_kron_identity_factor():
    m = RMatrix.from_rows([[1, 2], [3, "1/2"]])
    k = kron(RMatrix.identity(2), m)
    assert k[0:2, 0:2] == m and k[2:4, 2:4] == m
    assert k[0:2, 2:4].is_zero() and k[2:4, 0:2].is_zero()


def test_kron_entry_definition():
    k = kron(A3, A3)
    a = A3.to_fractions()
    for x in range(3):
        for y in range(3):
            for z in range(3):
                assert k[x * 3 + x, y * 3 + z] == a[x][y] * a[x][z]


def test_kron_diagonals():
    assert kron(RMatrix.diag([1, 0]), RMatrix.diag([0, 1])) == RMatrix.diag([0, 1, 0, 0])


# -- kernel ------------------------------------------------------------------------

def test_kernel_identity():
    assert kernel(I3).dim == 0


def test_kernel_all_ones():
    k = kernel(J3)
    assert k.dim == 2
    assert k == Subspace.span([col(1, -1, 0), col(1, 0, -1)])
    assert (J3 @ k.matrix).is_zero()


@pytest.mark.parametrize("r", [3, 4, 5])
def test_kernel_top_eigenspace(r):
    a = RMatrix.ones(r) - RMatrix.identity(r)
    k = kernel(a - (r - 1) * RMatrix.identity(r))
    assert k.dim == 1
    assert k == Subspace.span([RMatrix.ones(r, 1)])


# -- subspace sum / intersection / complement ----------------------------------------

def e(i, n=3):
    v = [0] * n
    v[i] = 1
    return col(*v)


def test_sum_examples():
    u = Subspace.span([col(1, 2, 3), col(0, 1, 1)])
    assert subspace_sum(u, u) == u and subspace_sum(u, u).dim == 2
    assert subspace_sum(Subspace.span([e(0)]), Subspace.span([e(1)])).dim == 2


def test_sum_k3_primary():
    # E0 V + E0* V is the span of 1 and x-hat, which is e0 V
    e0v = Subspace.span([col(1, 1, 1), e(0)])
    s = subspace_sum(Subspace.span(J3 / 3), Subspace.span(RMatrix.diag([1, 0, 0])))
    assert s.dim == 2 and s == e0v


def test_intersect_examples():
    u = Subspace.span([col(1, 2, 3), col(0, 1, 1)])
    assert subspace_intersect(u, Subspace.full(3)) == u
    assert subspace_intersect(Subspace.span([e(0)]), Subspace.span([e(1)])).dim == 0


def test_intersect_k3_e1v():
    flat1 = Subspace.span(I3 - J3 / 3)
    star1 = Subspace.span(RMatrix.diag([0, 1, 1]))
    got = subspace_intersect(flat1, star1)
    assert got.dim == 1 and got == Subspace.span([col(0, 1, -1)])


def test_complement_examples():
    w = Subspace.span([col(1, 2, 3), col(0, 1, 1)])
    assert orth_complement_within(Subspace.zero(3), w) == w
    c = orth_complement_within(Subspace.span([col(1, 1)]), Subspace.full(2))
    assert c == Subspace.span([col(1, -1)])
    e0v = Subspace.span([col(1, 0, 0), col(1, 1, 1)])
    assert orth_complement_within(e0v, Subspace.full(3)) == Subspace.span([col(0, 1, -1)])


def test_complement_requires_containment():
    with pytest.raises(ContainmentError, match="basis vector 1"):
        orth_complement_within(Subspace.span([e(0), e(2)]),
                               Subspace.span([e(0), e(1)]))


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatchError):
        subspace_sum(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatchError):
        subspace_intersect(Subspace.full(2), Subspace.full(3))


# -- commutant -----------------------------------------------------------------------

def brute_commutant_dim(gens, k):
    """Oracle: solve Z G = G Z directly with sympy on k^2 unknowns."""
    zs = sympy.symbols(f"z0:{k * k}")
    z = sympy.Matrix(k, k, zs)
    eqs = []
    for g in gens:
        eqs.extend(list(z * g - g * z))
    if not eqs:
        return k * k
    system = sympy.Matrix([[sympy.diff(eq, v) for v in zs] for eq in eqs])
    return k * k - system.rank()


def test_commutant_identity():
    w = Subspace.span([col(1, 0, 0), col(0, 1, 1)])
    assert commutant_dim([I3], w) == 4


def test_commutant_k3_primary():
    astar = RMatrix.diag([2, -1, -1])
    w = Subspace.span([e(0), col(1, 1, 1)])
    assert commutant_dim([A3, astar], w) == 1
    b = sympy.Matrix([[-1, 0], [1, 2]])
    bs = sympy.Matrix([[2, 3], [0, -1]])
    assert brute_commutant_dim([b, bs], 2) == 1


def test_commutant_k3_whole_space():
    astar = RMatrix.diag([2, -1, -1])
    assert brute_commutant_dim([sympy_of(A3), sympy_of(astar)], 3) == 2
    assert commutant_dim([A3, astar], Subspace.full(3)) == 2


def test_commutant_invariance_error():
    with pytest.raises(InvarianceError, match="A\\*"):
        commutant_dim([RMatrix.diag([2, -1, -1])], Subspace.span([col(1, 1, 1)]), names=["A*"])


# -- engines agree -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(low_rank_ints())
def test_engines_match_sympy(m):
    ref = sympy.Matrix(m.tolist()).rref()
    for ech in (rref_bareiss(m), rref_modular(m)):
        assert ech.pivots == tuple(ref[1])
        got = [[Fraction(int(x), ech.den) for x in row] for row in ech.num]
        want = [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1]))
                 for x in ref[0].row(i)] for i in range(len(ref[1]))]
        assert got == want


def test_modular_engine_large_structured():
    a = RMatrix.ones(3) - RMatrix.identity(3)
    m = kron(kron(a, a), kron(a, RMatrix.ones(3)))
    x, y = rref_bareiss(m.num), rref_modular(m.num)
    assert x.pivots == y.pivots and x.den == y.den and np.all(x.num == y.num)


# -- algebraic properties --------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.data())
def test_mul_associative_distributive(data):
    m, n, p, q = (data.draw(st.integers(1, 3)) for _ in range(4))
    a = data.draw(rmatrices(m, n))
    b = data.draw(rmatrices(n, p))
    b2 = data.draw(rmatrices(n, p))
    c = data.draw(rmatrices(p, q))
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + b2) == a @ b + a @ b2
    assert (a @ b).to_fractions() == brute_product(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: rmatrices(n, n)))
def test_inverse_iff_full_rank(a):
    n = a.rows
    assert rank(a) == sympy_of(a).rank()
    if rank(a) == n:
        inv = mat_inverse(a)
        assert inv @ a == RMatrix.identity(n) and a @ inv == RMatrix.identity(n)
    else:
        with pytest.raises(SingularMatrixError):
            mat_inverse(a)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_kron_mixed_product(data):
    n1, n2 = data.draw(st.integers(2, 3)), data.draw(st.integers(2, 3))
    a, c = data.draw(rmatrices(n1, n1)), data.draw(rmatrices(n1, n1))
    b, d = data.draw(rmatrices(n2, n2)), data.draw(rmatrices(n2, n2))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@st.composite
def subspaces(draw, n):
    k = draw(st.integers(0, n))
    if k == 0:
        return Subspace.zero(n)
    return Subspace.span(draw(rmatrices(n, k)))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_dimension_modular_law(pair):
    u, v = pair
    s, i = subspace_sum(u, v), subspace_intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    assert s.contains(u) and s.contains(v) and u.contains(i) and v.contains(i)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_complement_properties(pair):
    u0, w0 = pair
    w = subspace_sum(u0, w0)
    c = orth_complement_within(u0, w)
    assert c.is_orthogonal_to(u0)
    assert u0.dim + c.dim == w.dim
    assert w.contains(c) and subspace_sum(u0, c) == w


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n), subspaces(n))))
def test_equality_is_equivalence(triple):
    a, b, c = triple
    # re-expressing a basis must not change the subspace
    if a.dim:
        upper = RMatrix(np.triu(np.ones((a.dim, a.dim), dtype=np.int64)))
        rebased = Subspace.span(a.matrix @ upper)
        assert rebased == a and rebased.dim == a.dim
    assert a == a
    assert (a == b) == (b == a)
    if a == b and b == c:
        assert a == c
