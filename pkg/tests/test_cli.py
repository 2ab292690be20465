import json
import subprocess
import sys

import pytest

from daggeralg.algebra import hyperelliptic, torus
from daggeralg.cli import main
from daggeralg.series import Certificate, OSeries


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj))
        return str(path)
    return write


def Y(terms, **kw):
    return OSeries.polynomial(5, ("Y",), {(k,): c for k, c in terms.items()}, **kw)


def test_gaussnorm(capsys, files):
    path = files("f.json", OSeries.polynomial(5, ("X",), {(0,): 5, (3,): 1}))
    assert run(capsys, "gaussnorm", "--t", "1/2", path) == (0, {"w": "-3/2"})


def test_wdiv_and_determinism(capsys, files):
    f, g = files("f.json", Y({3: 1})), files("g.json", Y({2: 1, 0: -5}))
    code, out = run(capsys, "wdiv", "--t", "0", f, g)
    assert code == 0
    assert out["quotient"]["terms"] == [{"e": [1], "c": "1"}]
    assert out["remainder"]["terms"] == [{"e": [1], "c": "5"}]
    main(["wdiv", "--t", "0", f, g])
    first = capsys.readouterr().out
    main(["wdiv", "--t", "0", "--var", "1", f, g])
    assert capsys.readouterr().out == first


def test_wdiv_not_distinguished(capsys, files):
    g = files("g.json", OSeries.polynomial(5, ("X", "Y"), {(1, 1): 1}))
    code, out = run(capsys, "wdiv", g, g)
    assert code == 1 and out["error"]["kind"] == "not-distinguished"
    assert out["error"]["verb"] == "wdiv"


def test_cutoff_from_environment(capsys, files, monkeypatch):
    trunc = OSeries(5, ("Y",), {(3,): 1}, Certificate(0, 0, 20))
    f, g = files("f.json", trunc), files("g.json", Y({2: 1, 0: -5}))
    monkeypatch.setenv("DAGGERALG_CUTOFF", "30")
    code, out = run(capsys, "wdiv", "--t", "0", f, g)
    assert code == 1 and out["error"]["kind"] == "uncertified-precision"
    assert [i["certificate"]["M"] for i in out["error"]["inputs"]] == ["20", "inf"]
    code, _ = run(capsys, "wdiv", "--t", "0", "--cutoff", "10", f, g)
    assert code == 0
    monkeypatch.setenv("DAGGERALG_CUTOFF", "10")
    assert run(capsys, "wdiv", "--t", "0", f, g)[0] == 0


def test_usage_errors_exit_2(capsys, files):
    code, out = run(capsys, "gram", "--K", "2")
    assert code == 2 and out["error"]["kind"] == "usage"
    code, out = run(capsys, "gaussnorm", "--t", "0.5", files("f.json", Y({1: 1})))
    assert code == 2
    code, out = run(capsys, "gaussnorm", files("bad.json", {"p": 5}))
    assert code == 2 and out["error"]["kind"] == "schema"
    code, out = run(capsys, "gaussnorm", "/nonexistent.json")
    assert code == 2


def test_reduce_and_presentations(capsys, files):
    P = files("P.json", torus(5))
    x = files("x.json", OSeries.polynomial(5, ("x", "x_inv"), {(3, 1): 1}))
    code, out = run(capsys, "reduce", "--presentation", P, "--t", "0", x)
    assert code == 0 and out["quotient_norm"] == "0"
    H = files("H.json", hyperelliptic(7, [1, 0, 0, 1]))
    code, out = run(capsys, "hdr", "--presentation", H)
    assert code == 0 and [deg["dimension"] for deg in out["degrees"]] == [1, 2]


def test_gram_contrast_poincare_kunneth(capsys, files):
    assert run(capsys, "gram", "--K", "1", "--m", "1")[1]["matrix"] == [["1"]]
    code, out = run(capsys, "contrast", "--p", "2", "--depth", "4")
    assert out["best_fit_slopes"][-1] == "1/16"
    P = files("P.json", torus(5))
    assert run(capsys, "poincare", "--presentation", P)[1]["nondegenerate"]
    assert run(capsys, "kunneth", "--a", P, "--b", P)[1]["computed"] == [1, 2, 1]


def test_cech(capsys, files):
    from daggeralg.cech import DiscCover

    h = DiscCover(5, 1).section({(1,): 1, (-2,): 3})
    code, out = run(capsys, "cech", "--p", "5", "--split", "1", files("h.json", h))
    assert code == 0 and out["H1"]["all_split"]


def test_round_trip_of_outputs(capsys, files):
    f, g = files("f.json", Y({4: 1, 0: 2})), files("g.json", Y({2: 1, 0: -5}))
    _, out = run(capsys, "wdiv", "--t", "0", f, g)
    r = OSeries.from_json(out["remainder"])
    assert r.terms == {(0,): 2 + 25}


def test_selftest_single_criterion(capsys):
    code, out = run(capsys, "selftest", "--criterion", "1")
    assert code == 0 and out["passed"]


def test_console_module_entry_point(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(Y({1: 5}).to_json()))
    proc = subprocess.run([sys.executable, "-m", "daggeralg.cli", "gaussnorm", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"w": "1"}
