import pytest

from posetrep import frames as F
from posetrep.poset import find_subposet_isomorphic
from posetrep.quiver import is_hyperbolic


def _clear():
    for f in (F._loupias_raw, F.loupias_variants, F.loupias_labels, F.les_frame):
        f.cache_clear()


@pytest.fixture
def fresh():
    _clear()
    yield
    _clear()


def test_shipped_data_validates():
    assert F.validate() == []


def test_variant_count():
    # 595 minimal rep-infinite posets up to opposites (scripts/derive_frames.py re-derives this)
    assert len(F.loupias_labels()) == 595


def test_hereditary_frames_have_no_crown():
    cr = F.crown()
    for fid in F.HEREDITARY_IDS[1:]:
        for v in F.loupias_variants(fid):
            assert find_subposet_isomorphic(v, cr) is None


def test_d4_has_all_orientations():
    sizes = {len(v) for v in F.loupias_variants("D4")}
    assert sizes == {5}
    assert len(F.loupias_variants("D4")) >= 3


def test_aliases_and_unknown():
    assert F.loupias_frame("D̃_4").canonical_form() == F.loupias_frame("D4").canonical_form()
    with pytest.raises(F.UnknownFrame):
        F.loupias_frame("R99")
    with pytest.raises(F.UnknownFrame):
        F.les_frame("nope")


def test_les_frames_hyperbolic():
    ids = F.les_ids()
    assert len(ids) == 25
    assert all(is_hyperbolic(F.les_frame(i)) for i in ids)


def test_corrupt_frame_is_named(fresh, monkeypatch):
    real = F._read

    def fake(kind, name):
        if name == "R3.poset":
            return "a < b\nc < d\n"
        return real(kind, name)

    monkeypatch.setattr(F, "_read", fake)
    problems = F.validate()
    assert len(problems) == 1 and problems[0].startswith("R3:")
