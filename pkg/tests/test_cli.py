import io
import json
from pathlib import Path

import pytest

from posetrep import cli

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_then_analyze_stdin(capsys, monkeypatch):
    code, text, _ = run(capsys, "generate", "product", "2", "5")
    assert code == 0
    code, out, _ = run(capsys, "analyze", "-", "--json", stdin=text, monkeypatch=monkeypatch)
    assert code == 0
    rep = json.loads(out)
    res = rep["result"]
    if isinstance(res, list):
        res = res[0]
    flat = json.dumps(res)
    assert '"rep_finite"' in flat and rep["tool"] == "posetrep" and rep["seed"] == 0


def test_json_is_deterministic(capsys):
    f = str(DATA / "2x5.poset")
    a = run(capsys, "reduce", f, "--json")[1]
    b = run(capsys, "reduce", f, "--json")[1]
    assert a == b
    assert cli.dumps(json.loads(a)) == a


def test_quiver_classify(capsys):
    code, out, _ = run(capsys, "quiver", "classify", str(DATA / "k3.quiver"))
    assert code == 0 and "Wild" in out and "hyperbolic" in out


def test_unknown_exit_code(capsys):
    code, _, _ = run(capsys, "analyze", str(DATA / "hyperbolic7.poset"), "--jobs", "1")
    assert code == 2


def test_concealed_certificate(capsys):
    code, out, _ = run(capsys, "concealed-check", str(DATA / "r1.poset"), "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["found"] and res["certificate"]["iso_layer"] == "full"


@pytest.mark.parametrize("argv", [
    ["analyze", "/nonexistent/file.poset"],
    ["generate", "no_such_family"],
    ["generate", "chain"],
    ["reduce", str(DATA / "2x5.poset"), "--window", "-1"],
    ["frobnicate"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1


def test_bad_poset_text(capsys, monkeypatch):
    code, _, err = run(capsys, "analyze", "-", stdin="a < b\nb < a\n", monkeypatch=monkeypatch)
    assert code == 1 and err.startswith("posetrep: error:")


def test_selftest_skips_small_window(capsys):
    code, out, _ = run(capsys, "selftest", "--window", "1", "--json")
    res = json.loads(out)["result"]
    assert code == 0
    assert any(r["status"] == "SKIP" for r in res)
    assert not any(r["status"] == "FAIL" for r in res)


def test_generate_roundtrip(capsys, monkeypatch):
    from posetrep import poset as P
    from posetrep import quiver as Qv
    cases = [(["C_ell_diamond", "4"], "poset", P.c_ell_diamond(4).canonical_form()),
             (["figure8"], "poset", P.figure8().canonical_form()),
             (["a_tilde_tilde", "2", "3"], "quiver", Qv.quiver_canonical(Qv.a_tilde_tilde(2, 3)))]
    for argv, want_kind, want in cases:
        code, text, _ = run(capsys, "generate", *argv)
        assert code == 0
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        kind, obj = cli.load("-")
        assert kind == want_kind
        got = obj.canonical_form() if kind == "poset" else Qv.quiver_canonical(obj)
        assert got == want
