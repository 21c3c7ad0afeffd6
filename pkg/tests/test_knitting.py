import itertools

import pytest
from hypothesis import given

from posetrep import linrep as L
from posetrep import quiver as Qv
from posetrep.knitting import (NodeOutOfWindow, enumerate_postprojective_tilting, ext_dim, hom_profile, knit,
                               ladder_table, rigid_pair)

from conftest import connected_quivers


def positive_root_count(q, box=4):
    return sum(1 for x in itertools.product(range(box + 1), repeat=q.n) if any(x) and Qv.tits(q, x) == 1)


@pytest.mark.parametrize("q", [Qv.linear_a(2), Qv.linear_a(4), Qv.star(3), Qv.arms_tree(1, 2, 2)])
def test_dynkin_component_is_exhausted_by_roots(q):
    c = knit(q, 4 * q.n + 4)
    assert c.exhausted
    assert len(c.nodes) == positive_root_count(q, 3)
    assert all(Qv.tits(q, c.dims[nd]) == 1 for nd in c.nodes)


@given(connected_quivers(max_n=4, max_mult=2))
def test_knitted_dims_equal_explicit_modules(q):
    c = knit(q, 2)
    for nd in c.nodes:
        if sum(c.dims[nd]) <= 40:
            m = c.module(nd)  # raises if the explicit module disagrees
            assert L.is_indecomposable(m)


@given(connected_quivers(max_n=4, max_mult=2))
def test_hom_recurrence_and_rigidity(q):
    c = knit(q, 3)
    src = c.nodes[0]
    fast = hom_profile(c, src, exact=False)
    for nd in c.nodes:
        assert fast.values[nd] >= 0
        assert rigid_pair(c, nd, nd)
        assert ext_dim(c, nd, src) >= 0


def test_exact_profile_on_small_quiver():
    q = Qv.a_tilde_tilde(2, 3)
    c = knit(q, 3)
    prof = hom_profile(c, (q.index["a"], 0), exact=True)
    assert prof.exact
    table = ladder_table(c, prof)
    assert table.splitlines()[0].split() == ["0", "1", "2", "3"]


def test_out_of_window():
    c = knit(Qv.kronecker(), 2)
    with pytest.raises(NodeOutOfWindow):
        c.module((0, 5))


@pytest.mark.parametrize("q,count", [(Qv.linear_a(2), 2), (Qv.linear_a(3), 5)])
def test_postprojective_tilting_counts_dynkin(q, count):
    # for Dynkin types every module is postprojective, so the counts are the tilting counts:
    # A2 has 2 tilting modules, A3 (linear) has 5
    assert len(enumerate_postprojective_tilting(q, 10)) == count


def test_postprojective_tilting_are_tilting():
    q = Qv.kronecker()
    c = knit(q, 3)
    ts = enumerate_postprojective_tilting(q, 3, c)
    assert ts
    for t in ts:
        assert L.is_tilting([c.module(nd) for nd in t]).is_tilting


def test_dot_output():
    dot = knit(Qv.kronecker(3), 1).to_dot()
    assert dot.startswith("digraph AR {") and dot.count("->") >= 3
