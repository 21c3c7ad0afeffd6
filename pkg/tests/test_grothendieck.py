from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from posetrep import linrep as L
from posetrep import poset as P
from posetrep import quiver as Qv
from posetrep.algebra import incidence_algebra, path_algebra
from posetrep.grothendieck import (NotHyperbolic, NotTilting, RankMismatch, all_indecomposables_finite,
                                   brute_force_support_tilting, cone_samples, euler, exterior_witness, g_fan,
                                   g_vector, knitted_transfer, negative_cone_vs_postprojectives, pairing,
                                   transfer, verify_notgtame, wall_check)
from posetrep.knitting import enumerate_postprojective_tilting, knit


def catalan(n):
    return comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("q", [Qv.linear_a(1), Qv.linear_a(2), Qv.linear_a(3),
                               Qv.Quiver(["a", "b", "c"], [("a", "b"), ("c", "b")])])
def test_fan_of_type_a_has_catalan_many_cones(q):
    fan = g_fan(path_algebra(q))
    assert fan.closed and fan.complete and fan.facet_pairing
    assert len(fan.cones) == catalan(q.n + 1)


def test_fan_matches_brute_force_on_a3():
    a = path_algebra(Qv.linear_a(3))
    brute = brute_force_support_tilting(a, all_indecomposables_finite(Qv.linear_a(3)))
    assert len(set(brute)) == len(g_fan(a).cones) == 14


def test_fan_of_commutative_square_is_complete():
    fan = g_fan(incidence_algebra(P.product_of_chains(2, 2)), 200)
    assert fan.closed and fan.complete
    assert exterior_witness(fan.cones, 4) is None


def test_kronecker_fan_is_not_complete():
    fan = g_fan(path_algebra(Qv.kronecker()), 20)
    assert not fan.closed and fan.exterior_witness is not None
    x = fan.exterior_witness
    assert x[0] == -x[1]  # the imaginary direction (1, -1) up to sign


def test_g_vectors_of_projectives_and_simples():
    a = path_algebra(Qv.linear_a(2))
    for i in range(2):
        assert g_vector(L.projective(a, i)).vector == tuple(int(j == i) for j in range(2))
    s = [L.simple(a, i) for i in range(2) if L.pd(L.simple(a, i)) == 1][0]
    assert sum(g_vector(s).vector) == 0


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_euler_form_against_hom_minus_ext(x, y):
    q = Qv.linear_a(3)
    a = path_algebra(q)
    # <P_i, d> = d_i
    for i in range(3):
        assert euler(a, L.projective(a, i).dims, y) == y[i]
    assert pairing(x, y) == sum(Fraction(u) * v for u, v in zip(x, y))


def test_pairing_rank_mismatch():
    with pytest.raises(RankMismatch):
        pairing([1, 2], [1, 2, 3])


@pytest.mark.parametrize("q", [Qv.linear_a(2), Qv.kronecker(), Qv.kronecker(3)])
def test_transfer_identity_explicit(q):
    c = knit(q, 3)
    for t in enumerate_postprojective_tilting(q, 3, c)[:3]:
        data = transfer(path_algebra(q), [c.module(nd) for nd in t])
        assert data.identity_holds()
        for d in ([1, 0], [0, 1], [2, 3]):
            for theta in ([1, 0], [0, 1], [3, -2]):
                assert pairing(theta, d) == pairing(data.theta_B(theta), data.hat(d))
        rep = knitted_transfer(c, t)
        assert rep.holds and rep.gen_checks > 0


def test_transfer_rejects_non_tilting():
    a = path_algebra(Qv.linear_a(2))
    with pytest.raises(NotTilting):
        transfer(a, [L.projective(a, 0)])


def test_negative_cone_on_k3():
    q = Qv.kronecker(3)
    for x in cone_samples(q, 5):
        assert negative_cone_vs_postprojectives(q, x, 4).all_negative


def test_wall_check_on_simple_wall():
    # a band module (1, 1) has one proper quotient, the simple at the source
    a = path_algebra(Qv.kronecker())
    m = L.generic_rep(a, (1, 1), 1)
    assert L.is_indecomposable(m)
    src = a.arrows[0][0]
    good = [1 if v == src else -1 for v in range(2)]
    bad = [-x for x in good]
    assert wall_check(good, m).holds and wall_check(good, m).theta_m == 0
    assert not wall_check(bad, m).holds


def test_notgtame_pipeline_small():
    rep = verify_notgtame(Qv.kronecker(3), None, [(1, 1)], window=3)
    assert rep.passed
    with pytest.raises(NotHyperbolic):
        verify_notgtame(Qv.kronecker(2), None, [(1, 1)], window=2)
