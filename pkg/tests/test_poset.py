import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from posetrep import poset as P

from conftest import posets


def brute_iso(p, q):
    if len(p) != len(q):
        return False
    for perm in itertools.permutations(range(len(q))):
        if all(p.leq_idx(i, j) == q.leq_idx(perm[i], perm[j]) for i in range(len(p)) for j in range(len(p))):
            return True
    return False


def test_parse_format_roundtrip_and_errors():
    p = P.parse_poset("a < b\nb < c\nlonely\n# comment\n")
    assert len(p) == 4 and p.leq("a", "c")
    assert P.parse_poset(P.format_poset(p)) == p
    with pytest.raises(P.CycleDetected):
        P.parse_poset("a < b\nb < a")
    with pytest.raises(P.ParseError):
        P.parse_poset("a < b < c")


def test_transitive_reduction_matches_networkx():
    p = P.product_of_chains(3, 3)
    g = nx.transitive_reduction(p.comparability_digraph())
    assert {(p.elements[a], p.elements[b]) for a, b in g.edges} == set(p.covers)


def test_cover_contraction_rejects_non_cover():
    p = P.chain(3)
    a, b = p.elements[0], p.elements[2]
    with pytest.raises(P.NotACover):
        P.contract(p, P.ContractionStep("contract-cover", (a, b)))


@given(posets(max_size=6))
def test_canonical_form_is_relabelling_invariant(p):
    names = list(p.elements)
    shuffled = names[:]
    random.Random(len(names)).shuffle(shuffled)
    q = p.relabel(dict(zip(names, [f"y{k}" for k in range(len(names))])))
    q = q.induced(list(reversed(range(len(q)))))
    assert p.canonical_form() == q.canonical_form()


@given(posets(max_size=6), posets(max_size=6))
def test_canonical_form_decides_isomorphism(p, q):
    assert (p.canonical_form() == q.canonical_form()) == brute_iso(p, q)


@given(posets(max_size=7))
def test_opposite_is_involution(p):
    assert p.opposite().opposite() == p
    assert len(p.opposite().minimal()) == len(p.maximal())


@given(posets(min_size=2, max_size=7))
def test_deletion_and_contraction_shrink_by_one(p):
    x = p.elements[0]
    assert len(P.delete(p, x)) == len(p) - 1
    if p.cover_pairs():
        i, j = p.cover_pairs()[0]
        q = P.contract(p, P.ContractionStep("contract-cover", (p.elements[i], p.elements[j])))
        assert len(q) == len(p) - 1


@given(posets(max_size=7))
def test_convex_hull_is_convex(p):
    members = frozenset(p.elements[: max(1, len(p) // 2)])
    hull = P.convex_hull(P.SubposetWitness(p, members))
    assert hull.convex and members <= hull.members


def test_named_posets():
    c3 = P.c_ell_diamond(3)
    assert len(c3) == 8
    assert P.is_isomorphic(P.product_of_chains(2, 2, 2), c3)
    assert len(P.figure8()) == 7
    assert len(P.hyperbolic_example()) == 7
    assert P.c_ell(4).is_hereditary() and len(P.c_ell(4)) == 8
    assert P.d_tilde(4).is_hereditary() and len(P.d_tilde(6)) == 9


def test_subposet_search_and_convexity():
    p = P.c_ell_diamond(5)
    w = P.find_subposet_isomorphic(p, P.c_ell(5))
    assert w is not None and w.convex
    ch = P.chain(3)
    assert not P.is_convex(ch, [ch.elements[0], ch.elements[2]])
    assert P.find_subposet_isomorphic(P.product_of_chains(2, 4), P.c_ell_diamond(3)) is None
    assert P.find_subposet_isomorphic(P.product_of_chains(2, 2, 2), P.c_ell_diamond(3)) is not None


@given(st.integers(1, 5), st.integers(1, 5))
def test_product_of_chains_sizes(n, m):
    p = P.product_of_chains(n, m)
    assert len(p) == n * m
    assert p.interval_count() == (n * (n + 1) // 2) * (m * (m + 1) // 2)
