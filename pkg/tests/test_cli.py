import io
import json
import os
import subprocess
import sys

import pytest

from bclique import __version__
from bclique.cli import run
from bclique.poly import BivariatePoly
from bclique.replay import replay

from conftest import DATA


def data(name):
    return os.path.join(DATA, name)


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def poly_of(obj):
    return BivariatePoly.from_json(obj)


def test_compute_k3():
    code, env, _ = invoke("compute", "--graph", data("k3.g"))
    assert code == 0
    assert env["version"] == __version__ and len(env["input_hash"]) == 64
    assert env["params"] == {"command": "compute", "graph": data("k3.g"), "strategy": "brute"}
    assert poly_of(env["result"]["polynomial"]).terms == {
        (0, 0): 1, (1, 0): 1, (1, 1): 2, (2, 1): 2, (2, 2): 1, (3, 2): 1}
    assert env["reports"] == []


def test_compute_all_strategies_chordal4():
    code, env, _ = invoke("compute", "--graph", data("chordal4.g"), "--strategy", "all")
    assert code == 0
    rep = env["reports"][0]
    assert rep["claim"] == "strategy-agreement" and rep["verdict"] == "holds"
    assert rep["details"]["strategies"] == ["brute", "edge", "peo", "vertex"]
    assert len(env["result"]["peo_steps"]) == 4


def test_compute_peo_on_non_chordal(capsys):
    code, env, _ = invoke("compute", "--graph", data("c6.g"), "--strategy", "peo")
    assert code == 1 and env is None
    assert "not chordal" in capsys.readouterr().err
    code, env, _ = invoke("compute", "--graph", data("c6.g"), "--strategy", "all")
    assert code == 0 and "peo strategy skipped" in env["reports"][0]["notes"][0]


def test_zeta_k2():
    code, env, _ = invoke("zeta", "--graph", data("k2.g"), "--y", "1/2")
    assert code == 0
    res = env["result"]
    assert res["y"] == "1/2" and res["zeta"]["exact"] == "-1/1"


def test_bounds_and_check_bounds():
    code, env, _ = invoke("bounds", "--graph", data("c6.g"))
    assert code == 0 and env["result"]["gB"] == 6 and env["result"]["alphaB"] == 3
    code, env, _ = invoke("check", "bounds", "--graph", data("c6.g"))
    assert code == 0 and [r["verdict"] for r in env["reports"]] == ["holds", "holds"]


def test_check_spectral_k4_is_violated(capsys):
    code, env, _ = invoke("check", "spectral", "--graph", data("k4.g"))
    assert code == 2
    bad = [r for r in env["reports"] if r["verdict"] == "violated"]
    assert [r["claim"] for r in bad] == ["root-bound"]
    assert replay(bad[0])
    assert "violated: root-bound (1)" in capsys.readouterr().err


def test_check_stability_chordal4():
    code, env, _ = invoke("check", "stability", "--graph", data("chordal4.g"), "--r", "2", "--trials", "50")
    assert code == 0
    claims = [r["claim"] for r in env["reports"]]
    assert claims == ["neighborhood-geometry", "chordal-stability", "triangle-free-stability"]


def test_check_hom_c6_k2():
    code, env, _ = invoke("check", "hom", "--map", data("c6_k2.hom"))
    assert code == 2
    verdicts = {r["claim"]: r["verdict"] for r in env["reports"]}
    assert verdicts == {"homomorphism": "holds", "clique-lift": "violated", "hom-monotonicity": "violated"}
    for r in env["reports"]:
        if r["verdict"] == "violated":
            assert replay(r)


def test_check_monotonicity_with_grid():
    code, env, _ = invoke("check", "monotonicity", "--graph", data("k3.g"), "--y-grid", "0,1/2,1")
    assert code == 0
    assert len(env["reports"]) == 3 + 3
    assert env["params"]["y_grid"] == ["0/1", "1/2", "1/1"]


def test_spectrum_petersen():
    code, env, _ = invoke("spectrum", "--graph", data("petersen.g"))
    assert code == 0
    assert sorted(round(v) for v in env["result"]["eigenvalues"]) == [-2] * 4 + [1] * 5 + [3]


def test_corpus_small_run():
    code, env, _ = invoke("corpus", "--suite", "strategies", "--limit", "40")
    assert code == 0
    assert env["result"]["verdict_table"] == {"strategy-agreement": {"holds": 40}}


def test_output_is_byte_identical():
    argv = ("check", "stability", "--graph", data("chordal4.g"), "--seed", "9", "--trials", "30")
    assert invoke(*argv)[2] == invoke(*argv)[2]


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("compute", "--graph", "nope.g"), "cannot read"),
        (("zeta", "--graph", "K", "--y", "0.5"), "expected a rational"),
        (("zeta", "--graph", "K", "--y", "-1"), "nonnegative"),
        (("check", "hom", "--graph", "K"), "needs --map"),
        (("check", "bounds"), "needs --graph"),
        (("check", "stability", "--graph", "K", "--r", "0"), "--r must be"),
        (("spectrum", "--graph", "P3"), "not regular"),
        (("frobnicate",), "invalid choice"),
    ],
)
def test_errors_exit_one(tmp_path, capsys, argv, fragment):
    (tmp_path / "K").write_text("n 2\ne 1 2\n")
    (tmp_path / "P3").write_text("n 3\ne 1 2\ne 2 3\n")
    argv = [str(tmp_path / a) if a in ("K", "P3") else a for a in argv]
    code, env, _ = invoke(*argv)
    assert code == 1 and env is None
    assert fragment in capsys.readouterr().err


def test_malformed_graph_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.g"
    bad.write_text("n 3\ne 1 2\ne 1 9\n")
    assert invoke("compute", "--graph", str(bad))[0] == 1
    assert "line 3" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bclique.cli", "compute", "--graph", data("k3.g")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["pretty"]
