import itertools

import pytest
from hypothesis import given

from posetrep import quiver as Qv

from conftest import connected_quivers, quivers


def positive_roots(q, box=4):
    """Dimension vectors x with q(x) = 1, by brute force (Dynkin oracle)."""
    return [x for x in itertools.product(range(box + 1), repeat=q.n) if any(x) and Qv.tits(q, x) == 1]


def test_parse_format_roundtrip():
    q = Qv.parse_quiver("a -> b\na -> b\nb -> c\nd\n")
    assert q.n == 4 and len(q.arrows) == 3
    assert Qv.parse_quiver(Qv.format_quiver(q)) == q
    with pytest.raises(ValueError):
        Qv.parse_quiver("a -> b\nb -> a")


@pytest.mark.parametrize("q,roots", [(Qv.linear_a(3), 6), (Qv.linear_a(4), 10), (Qv.star(3), 12),
                                     (Qv.arms_tree(1, 2, 2), 36)])
def test_dynkin_root_counts(q, roots):
    assert Qv.form_type(q) == "Dynkin"
    assert len(positive_roots(q, 3)) == roots


def test_k3_classify():
    q = Qv.kronecker(3)
    assert str(Qv.classify_graph(q)[0]) == "Wild"
    assert Qv.is_hyperbolic(q)
    assert Qv.tits(q, (1, 1)) == -1
    assert Qv.find_negative_cone_vector(q) == [1, 1]


def test_euclidean_families():
    for q in (Qv.kronecker(2), Qv.star(4), Qv.arms_tree(2, 2, 2)):
        assert Qv.form_type(q) == "Euclidean"
    for q in (Qv.a_tilde_tilde(2, 3), Qv.d_tilde_tilde(5), Qv.e_tilde_tilde(7)):
        assert Qv.form_type(q) == "Wild"


@given(connected_quivers(max_n=5, max_mult=2))
def test_pattern_type_agrees_with_form(q):
    assert Qv.classify_graph(q)[0].tag == Qv.form_type(q)


@given(connected_quivers(max_n=5, max_mult=2))
def test_wild_iff_negative_cone_vector(q):
    assert (Qv.find_negative_cone_vector(q, 6) is not None) == (Qv.form_type(q) == "Wild")


@given(connected_quivers(max_n=6, max_mult=2))
def test_reduction_replays(q):
    if Qv.form_type(q) != "Wild":
        with pytest.raises(Qv.NotWild):
            Qv.reduce_to_hyperbolic(q)
        return
    steps = Qv.reduce_to_hyperbolic(q)
    assert Qv.replay_reduction(q, steps)
    assert Qv.is_hyperbolic(q.delete(steps))


@given(quivers(max_n=4))
def test_form_type_is_orientation_free(q):
    if not q.is_connected():
        return
    for r in Qv.orientations(q, 8):
        assert Qv.form_type(r) == Qv.form_type(q)
        assert Qv.quiver_canonical(Qv.reorient(r, [])) == Qv.quiver_canonical(r)


def test_canonical_identifies_relabelled_quivers():
    q = Qv.Quiver(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "y")])
    r = Qv.Quiver(["c", "a", "b"], [("a", "b"), ("b", "c"), ("a", "b")])
    assert Qv.quiver_canonical(q) == Qv.quiver_canonical(r)
    assert Qv.quiver_canonical(q) != Qv.quiver_canonical(q.opposite())
