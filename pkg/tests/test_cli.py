import json
import subprocess
import sys

import pytest

from logk3.cli import EXIT_CERT, EXIT_INPUT, EXIT_OK, main, run

D7_SWAP = {
    "degree": 7,
    "seq": [0, 0, 1],
    "action": {"group": "Z2", "generator_images": [{"rot": 1, "refl": True}]},
}
D5_ROT = {
    "degree": 5,
    "seq": [-1, -1, -1, -1, -1],
    "action": {"group": "Z5", "generator_images": [{"rot": 1, "refl": False}]},
}


def _run(*argv):
    code, doc, _ = run(list(argv))
    # every document must survive a JSON round trip unchanged
    assert json.loads(json.dumps(doc, ensure_ascii=False)) == doc
    return code, doc


def test_classify_d8():
    code, doc = _run("classify", "--json", json.dumps({"degree": 8, "seq": [3, 1]}))
    assert code == EXIT_OK
    assert doc["trivial"]
    assert doc["model"]["equation"]["text"] == "(xy - 1)t = x - 1"
    assert len(doc["trace"]) == 3


def test_classify_d7_swap():
    code, doc = _run("classify", "--a", "5", "--json", json.dumps(D7_SWAP))
    assert code == EXIT_OK
    assert doc["model"]["equation"]["text"] == "(x^2 - 5y^2)t = y - 1"
    assert sorted(doc["character"]) == [-1, 1]


def test_classify_order_five():
    code, doc = _run("classify", "--json", json.dumps(D5_ROT))
    assert code == EXIT_OK
    assert doc["model"]["kind"] == "non-explicit"
    assert doc["image_order"] == 5
    _, h1 = _run("h1", "--group", "Z5")
    assert h1["classes"] == 3


def test_classify_from_file(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(D7_SWAP))
    code, doc = _run("reduce", "--input", str(path))
    assert code == EXIT_OK
    assert doc["result"]["seq"] == [-1, -1, -1, -1, -1]


def test_reports():
    assert _run("petersen")[1]["five_cycles"] == 12
    assert _run("h1", "--group", "Z2")[1]["classes"] == 2
    assert len(_run("sequences", "--degree", "6")[1]["6"]) == 2


def test_points_and_density():
    code, doc = _run("points", "search", "--family", "counterexample", "--box", "1000")
    assert code == EXIT_OK and doc["count"] == 0
    code, doc = _run("points", "search", "--family", "normform", "--a", "2", "--box", "20")
    assert ["11", "8", "-1"] in doc["points"]
    code, doc = _run("points", "certify", "--M", "2", "--box", "50")
    assert code == EXIT_OK and doc["pass"]
    code, doc = _run("density", "--a", "2", "--primes", "2", "--points", "2")
    assert code == EXIT_OK and doc["total_points"] == 4


def test_brauer_commands():
    code, doc = _run("brauer", "hilbert", "--a", "2", "--b", "3", "--place", "3")
    assert doc["symbol"] == -1
    code, doc = _run("brauer", "counterexample", "--box", "100", "--places", "30")
    assert code == EXIT_OK
    assert doc["verdict"] == "BM obstruction trivial; X(ℤ) = ∅"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--json", '{"degree": 8, "seq": [2, 2]}'],
        ["classify", "--json", "{not json"],
        ["classify"],
        ["classify", "--json", json.dumps(D7_SWAP)],  # quadratic class without --a
        ["h1", "--group", "W3"],
        ["brauer", "hilbert", "--a", "0", "--b", "3"],
        ["points", "search", "--family", "normform", "--coeffs", "a=4,b=0,c=1,d=-1"],
    ],
)
def test_invalid_input_exit_code(argv):
    code, doc = _run(*argv)
    assert code == EXIT_INPUT
    assert doc["error"] == "invalid input"


def test_certification_failure_exit_code(monkeypatch):
    import logk3.points as points

    monkeypatch.setattr(points, "curve_decomposition", lambda M: points.CurveFamily(M, 0, 0))
    code, doc = _run("points", "certify", "--box", "20")
    assert code == EXIT_CERT


def test_deterministic_output():
    assert _run("density", "--a", "3", "--primes", "2", "--points", "2") == _run(
        "density", "--a", "3", "--primes", "2", "--points", "2"
    )


def test_main_writes_file(tmp_path):
    out = tmp_path / "out.json"
    assert main(["--out", str(out), "petersen"]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["aut_order"] == 120


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "logk3.cli", "sequences", "--degree", "8"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"8": [[1, 3]]}
    proc = subprocess.run([sys.executable, "-m", "logk3.cli", "sequences", "--degree", "9"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
