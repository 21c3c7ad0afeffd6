import itertools
import json

import sympy as sp
from hypothesis import given, settings

from posetrep import classify as C
from posetrep import linrep
from posetrep import poset as P
from posetrep.algebra import incidence_algebra
from posetrep.frames import LOUPIAS_IDS, crown, loupias_variants
from posetrep.quiver import classify_graph

from conftest import posets


def _h1_rank(p):
    """Rank of H_1(order complex; Q) from the full chain complex, via sympy."""
    n = len(p)
    e = [(i, j) for i in range(n) for j in range(n) if p.lt_idx(i, j)]
    t = [(i, j, k) for i, j in e for k in range(n) if p.lt_idx(j, k)]
    ix = {x: k for k, x in enumerate(e)}
    d1 = sp.zeros(n, len(e))
    for k, (i, j) in enumerate(e):
        d1[i, k] -= 1
        d1[j, k] += 1
    d2 = sp.zeros(len(e), len(t))
    for k, (i, j, l) in enumerate(t):
        d2[ix[(j, l)], k] += 1
        d2[ix[(i, l)], k] -= 1
        d2[ix[(i, j)], k] += 1
    r1 = d1.rank() if e else 0
    r2 = d2.rank() if t else 0
    return len(e) - r1 - r2


def test_products_of_chains():
    finite = [(2, 2), (2, 3), (2, 4), (1, 7)]
    infinite = [(2, 5), (3, 3), (2, 2, 2)]
    for s in finite:
        assert C.decide_rep_finite(P.product_of_chains(*s)).answer == C.YES, s
    for s in infinite:
        p = P.product_of_chains(*s)
        v = C.decide_rep_finite(p)
        assert v.answer == C.NO, s
        assert C.replay_certificate(p, v)


@given(posets(max_size=7))
@settings(max_examples=25)
def test_rep_finite_closed_under_deletion(p):
    v = C.decide_rep_finite(p)
    if v.answer == C.NO:
        assert C.replay_certificate(p, v)
    else:
        for x in p.elements[:3]:
            assert C.decide_rep_finite(P.delete(p, x)).answer == C.YES


@given(posets(min_size=2, max_size=8, connected=True))
@settings(max_examples=30)
def test_hereditary_trees_follow_dynkin(p):
    if not p.is_hereditary():
        return
    g = C.hasse_quiver(p)
    if len(g.arrows) != len(p) - 1:
        return
    kind = classify_graph(g)[0].tag
    assert (C.decide_rep_finite(p).answer == C.YES) == (kind == "Dynkin")


def test_minimality():
    assert C.minimality_check(crown()).answer == C.YES
    for fid in LOUPIAS_IDS:
        assert C.minimality_check(loupias_variants(fid)[0]).answer == C.YES, fid
    assert C.minimality_check(P.product_of_chains(2, 5)).answer == C.NO
    assert C.minimality_check(P.chain(4)).answer == C.NO


def test_tau_tilting_matches_rep_finite():
    for p in [P.product_of_chains(2, 4), P.product_of_chains(2, 5), crown()]:
        assert C.decide_tau_tilting_finite(p).answer == C.decide_rep_finite(p).answer


def test_simply_connected_examples():
    assert C.simply_connected(crown()).answer == C.NO
    assert C.simply_connected(P.figure8()).answer == C.YES
    assert C.simply_connected(P.product_of_chains(2, 3)).answer == C.YES
    assert C.simply_connected(P.a_tilde_cycle("ffbbffbb")).answer == C.NO


@given(posets(min_size=2, max_size=8, connected=True))
def test_simply_connected_against_homology(p):
    if len(p) < 2:
        return
    v = C.simply_connected(p)
    h = _h1_rank(p)
    if h:
        assert v.answer == C.NO
    if v.answer == C.YES:
        assert h == 0


@given(posets(max_size=8))
def test_gldim_criterion(p):
    v = C.gldim_le_2(p, cross_check=False)
    gd = linrep.global_dimension(incidence_algebra(p))
    assert (v.answer == C.YES) == (gd <= 2)


def test_gldim_witnesses():
    v = C.gldim_le_2(P.c_ell_diamond(3), cross_check=False)
    assert v.answer == C.NO and v.certificate["iz1_violation"]["ell"] == 3
    v = C.gldim_le_2(P.c_ell_diamond(2), cross_check=False)
    assert v.answer == C.NO and "iz2_violation" in v.certificate
    assert C.gldim_le_2(P.figure8()).answer == C.YES


def test_tame_examples():
    assert C.decide_tame(P.product_of_chains(2, 5)).answer == C.YES
    assert C.decide_tame(P.product_of_chains(2, 4)).answer == C.YES
    assert C.decide_tame(P.c_ell_diamond(5)).answer == C.NO


def test_g_tame_examples():
    assert C.decide_g_tame(P.product_of_chains(2, 3)).answer == C.YES
    v = C.decide_g_tame(P.c_ell_diamond(5))
    assert v.answer == C.NO
    assert C.decide_g_tame(crown()).answer == C.YES


def test_size_cap():
    try:
        C.decide_rep_finite(P.chain(20), cap=14)
    except C.SizeCapExceeded:
        pass
    else:
        raise AssertionError("cap not enforced")


def test_verdict_json_roundtrip():
    v = C.decide_rep_finite(P.product_of_chains(2, 5))
    s = json.dumps(v.to_json(), sort_keys=True)
    back = C.Verdict(**json.loads(s))
    assert back == v
    assert C.replay_certificate(P.product_of_chains(2, 5), back)


def test_first_homology_of_circles():
    for word in ["fbfb", "ffbbffbb", "ffbfbb"]:
        p = P.a_tilde_cycle(word)
        assert C.first_homology(p) == (1, [])
        assert _h1_rank(p) == 1
