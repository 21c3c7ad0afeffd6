import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from posetrep import linalg as la
from posetrep import linrep as L
from posetrep import poset as P
from posetrep import quiver as Qv
from posetrep.algebra import incidence_algebra, path_algebra

from conftest import connected_quivers, posets

small_ints = st.integers(-4, 4)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_and_nullspace_match_sympy(r, c, data):
    rows = [[Fraction(data.draw(small_ints)) for _ in range(c)] for _ in range(r)]
    assert la.rank(rows) == sympy.Matrix(rows).rank()
    ns = la.nullspace(rows, c)
    assert len(ns) == c - la.rank(rows)
    for v in ns:
        assert all(x == 0 for x in la.matvec(rows, v))


@given(st.integers(1, 4), st.data())
def test_det_and_smith_match_sympy(n, data):
    rows = [[data.draw(small_ints) for _ in range(n)] for _ in range(n)]
    assert la.det([[Fraction(x) for x in r] for r in rows]) == sympy.Matrix(rows).det()
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    want = sorted(abs(snf[i, i]) for i in range(n) if snf[i, i] != 0)
    assert sorted(abs(x) for x in la.smith_diagonal(rows) if x != 0) == want


@given(st.integers(1, 4), st.data())
def test_inertia_matches_eigenvalues(n, data):
    a = [[data.draw(small_ints) for _ in range(n)] for _ in range(n)]
    sym = [[Fraction(a[i][j] + a[j][i]) for j in range(n)] for i in range(n)]
    ev = sympy.Matrix(sym).eigenvals()
    pos = sum(m for v, m in ev.items() if sympy.re(sympy.N(v, 30)) > 1e-20)
    neg = sum(m for v, m in ev.items() if sympy.re(sympy.N(v, 30)) < -1e-20)
    assert la.inertia(sym) == (pos, neg, n - pos - neg)


@given(posets(max_size=7))
def test_incidence_algebra_dimension_and_cartan(p):
    a = incidence_algebra(p)
    assert a.dim == p.interval_count()
    assert all(a.cartan[i][j] == int(p.leq_idx(i, j)) for i in range(len(p)) for j in range(len(p)))


@given(connected_quivers(max_n=4, max_mult=2))
def test_yoneda_hom_from_projectives(q):
    a = path_algebra(q)
    m = L.generic_rep(a, [random.Random(q.n).randint(0, 2) for _ in range(q.n)])
    for i in range(a.n):
        assert L.hom_dim(L.projective(a, i), m) == m.dims[i]
        assert L.hom_dim(m, L.injective(a, i)) == m.dims[i]


@given(posets(min_size=2, max_size=6, connected=True))
def test_projectives_over_incidence_algebra(p):
    a = incidence_algebra(p)
    for i in range(a.n):
        pi = L.projective(a, i)
        assert pi.dims == tuple(int(p.leq_idx(i, j)) for j in range(a.n))
        assert L.is_indecomposable(pi) and L.pd(pi) == 0
        assert L.hom_dim(pi, L.injective(a, i)) == 1


def euler(q, x, y):
    return sum(a * b for a, b in zip(x, y)) - sum(x[i] * y[j] for i, j in q.arrow_idx())


@given(connected_quivers(max_n=3, max_mult=2), st.integers(0, 50))
def test_euler_form_and_ar_formula_on_path_algebras(q, seed):
    a = path_algebra(q)
    rng = random.Random(seed)
    mods = [L.generic_rep(a, [rng.randint(0, 2) for _ in range(q.n)], seed + k) for k in range(3)]
    mods = [m for m in mods if not m.is_zero()] + [L.simple(a, 0)]
    for x in mods:
        for y in mods:
            e = L.ext1_dim(x, y)
            assert L.hom_dim(x, y) - e == euler(q, x.dims, y.dims)
            if L.is_indecomposable(x):
                assert e == L.hom_dim(y, L.tau(x))


@given(posets(min_size=2, max_size=5, connected=True))
def test_hom_duality(p):
    a = incidence_algebra(p)
    xs = [L.projective(a, i) for i in range(a.n)] + [L.simple(a, i) for i in range(a.n)]
    for x in xs[:4]:
        for y in xs[-4:]:
            assert L.hom_dim(x, y) == L.hom_dim(L.dual(y), L.dual(x))


def test_tau_inverse_chain_and_coxeter():
    a = path_algebra(Qv.kronecker())
    m = L.projective(a, 1)
    phi = L.coxeter_matrix(a)
    for _ in range(4):
        nxt = L.tau_inv(m)
        assert list(nxt.dims) == [int(x) for x in la.vecmat([Fraction(d) for d in m.dims], phi)]
        assert L.isomorphic(L.tau(nxt), m)
        m = nxt


@given(posets(min_size=2, max_size=6, connected=True))
def test_tau_of_projective_is_zero_and_tau_tau_inv(p):
    a = incidence_algebra(p)
    for i in range(a.n):
        assert L.tau(L.projective(a, i)).is_zero()
        s = L.simple(a, i)
        if not L.tau_inv(s).is_zero():
            assert L.isomorphic(L.tau(L.tau_inv(s)), s)


def test_decompose_direct_sum():
    a = path_algebra(Qv.linear_a(3))
    parts = [L.projective(a, 0), L.simple(a, 1), L.injective(a, 2)]
    s = L.direct_sum(parts)
    got = sorted(m.dims for m in L.decompose(s))
    assert got == sorted(m.dims for m in parts)
    assert not L.is_indecomposable(s)


def test_global_dimensions():
    assert L.global_dimension(path_algebra(Qv.kronecker(3))) == 1
    assert L.global_dimension(incidence_algebra(P.chain(4))) == 1
    assert L.global_dimension(incidence_algebra(P.c_ell_diamond(2))) == 3
    assert L.global_dimension(incidence_algebra(P.figure8())) == 2
    assert L.global_dimension(incidence_algebra(P.product_of_chains(2, 2))) == 2


def test_relations_enforced_and_text_roundtrip():
    a = incidence_algebra(P.product_of_chains(2, 2))
    m = L.projective(a, 0)
    assert L.parse_representation(a, m.to_text()).dims == m.dims
    bad = [[[1]] for _ in a.arrows]
    bad[0] = [[2]]
    with pytest.raises(L.RelationViolated):
        L.Representation.make(a, (1, 1, 1, 1), bad)


def test_tilting_certificates():
    a = path_algebra(Qv.linear_a(2))
    proj = L.regular(a)
    assert L.is_tilting(proj).is_tilting
    assert not L.is_tilting([L.simple(a, 0), L.simple(a, 1)]).is_tilting
    hp = incidence_algebra(P.hyperbolic_example())
    assert L.global_dimension(hp) == 2
