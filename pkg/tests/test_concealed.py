import pytest

from posetrep import concealed as cc
from posetrep import linrep as L
from posetrep import poset as P
from posetrep import quiver as Qv
from posetrep.algebra import incidence_algebra, path_algebra
from posetrep.frames import loupias_frame
from posetrep.knitting import enumerate_postprojective_tilting, knit


def test_end_of_regular_module_is_opposite():
    q = Qv.Quiver(["a", "b", "c"], [("a", "b"), ("c", "b")])
    a = path_algebra(q)
    pres = cc.end_algebra(L.regular(a))
    assert pres.cartan == [list(r) for r in zip(*a.cartan)]
    assert Qv.quiver_canonical(pres.quiver) == Qv.quiver_canonical(q.opposite())
    assert pres.is_hereditary() and not pres.relations
    layer, sigma, _ = cc.match_algebra(a, pres)
    assert layer == 2 and sorted(sigma) == [0, 1, 2]


def test_end_of_incidence_algebra_has_commutativity():
    a = incidence_algebra(P.product_of_chains(2, 2))
    pres = cc.end_algebra(L.regular(a))
    assert not pres.is_hereditary() and pres.relations
    assert pres.dim == a.dim
    assert cc.match_algebra(a, pres)[0] == 2


def test_end_algebra_rejects_decomposable_summand():
    a = path_algebra(Qv.linear_a(2))
    with pytest.raises(cc.DecomposableSummand):
        cc.end_algebra([L.direct_sum(L.regular(a))])


@pytest.mark.parametrize("q", [Qv.kronecker(), Qv.linear_a(3)])
def test_tilted_algebras_of_hereditary_are_matched(q):
    c = knit(q, 3)
    for t in enumerate_postprojective_tilting(q, 3, c)[:4]:
        mods = [c.module(nd) for nd in t]
        pres = cc.end_algebra(mods)
        # End of a postprojective tilting module over kQ has the same number of vertices
        assert pres.quiver.n == q.n and pres.dim == sum(map(sum, pres.cartan))


def test_brenner_butler_on_kronecker():
    q = Qv.kronecker()
    c = knit(q, 3)
    t = enumerate_postprojective_tilting(q, 3, c)[1]
    rep = cc.brenner_butler_check(q, t, window=2)
    assert rep.holds and rep.hom_checks


def test_bongartz_small_cases():
    a = path_algebra(Qv.linear_a(2))
    s = [L.simple(a, i) for i in range(2) if L.pd(L.simple(a, i)) == 1][0]
    mp = cc.bongartz_completion(s)
    assert len(mp) == 2 and L.is_tilting(mp).is_tilting
    assert any(L.isomorphic(x, s) for x in mp)
    proj = cc.bongartz_completion(L.projective(a, 0))
    assert sorted(x.dims for x in proj) == sorted(x.dims for x in L.regular(a))
    with pytest.raises(cc.NotTauRigid):
        cc.bongartz_completion([L.simple(a, 0), L.simple(a, 1)])


def test_bongartz_general_case_with_support():
    a = incidence_algebra(P.product_of_chains(2, 2))
    m = L.simple(a, 0)
    r = [a.n - 1]  # Hom(P(r), S(0)) = 0, so (S(0), P(r)) is a tau-rigid pair
    assert cc.is_tau_rigid_pair([m], r)
    mp = cc.bongartz_completion(m, r)
    assert any(L.isomorphic(x, m) for x in mp)
    assert len(mp) + len(r) == a.n


def test_reduction_by_projective_is_idempotent_quotient():
    p = P.c_ell_diamond(2)
    a = incidence_algebra(p)
    for v in range(a.n):
        red = cc.tau_tilting_reduction(a, [L.projective(a, v)])
        # End(Lambda) / [P(v)] = Lambda / (e_v): intervals [i, j] avoiding v survive
        want = sum(1 for i in range(a.n) for j in range(a.n)
                   if p.leq_idx(i, j) and not (p.leq_idx(i, v) and p.leq_idx(v, j)))
        assert red.dim == want


def test_appendix_module_is_not_postprojective():
    q4 = Qv.Quiver(["1", "2", "3", "4"], [("1", "2"), ("1", "3"), ("2", "3"), ("4", "3")])
    a = path_algebra(q4)
    m = L.Representation.make(a, (1, 0, 1, 0), [[], [[1]], [[]], [[]]])
    assert L.is_indecomposable(m)
    info = cc.postprojective_in_window(q4, m, 8)
    assert not info["postprojective"] and info["orbits_grow"]
    red = cc.tau_tilting_reduction(a, [m])
    assert "Wild" in cc.quiver_components_types(red)


def test_quasi_tilted_refutation():
    hp = incidence_algebra(P.hyperbolic_example())
    ref = cc.quasi_tilted_refutation(hp)
    assert ref and ref["pd"] >= 2 and ref["id"] >= 2
    assert cc.quasi_tilted_refutation(path_algebra(Qv.kronecker(3))) is None
    assert cc.quasi_tilted_refutation(incidence_algebra(loupias_frame("R1"))) is None


def test_euclidean_types():
    for n in range(2, 10):
        types = cc.euclidean_types(n)
        assert types and all(t.n == n and Qv.form_type(t) == "Euclidean" for t in types)
    assert len(cc.euclidean_types(8)) == 3


def test_certify_concealed_outcomes():
    crown = incidence_algebra(loupias_frame("A3"))
    r = cc.certify_concealed(crown, cc.euclidean_types(4))
    assert r.found and r.certificate.iso_layer == "full"
    finite = incidence_algebra(P.product_of_chains(2, 3))
    r = cc.certify_concealed(finite, cc.euclidean_types(6), window=3)
    assert not r.found and r.refutation is None and r.budget_flags
    r = cc.certify_concealed(incidence_algebra(P.hyperbolic_example()), cc.euclidean_types(7))
    assert not r.found and r.refutation


def test_r2_frame_concealed():
    a = incidence_algebra(loupias_frame("R2"))
    r = cc.certify_concealed(a, [t for t in cc.euclidean_types(a.n) if t.n == a.n][-1:])
    assert r.found
    cert = r.certificate.to_json()
    assert cert["iso_layer"] == "full" and len(cert["summand_dims"]) == a.n
