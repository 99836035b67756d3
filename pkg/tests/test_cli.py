import json
import os
import subprocess
import sys

import pytest

from bicomm.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
CASES = json.load(open(os.path.join(GOLDEN, "cases.json")))


def run(argv, capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys, monkeypatch):
    got_code, out = run(argv, capsys, monkeypatch)
    assert got_code == code
    with open(os.path.join(GOLDEN, name + ".out.json"), encoding="utf-8") as fh:
        assert out == fh.read()


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_deterministic(name, argv, code, capsys, monkeypatch):
    first = run(argv, capsys, monkeypatch)
    assert run(argv, capsys, monkeypatch) == first


def test_j2_values(capsys, monkeypatch):
    _, out = run(["analyze", "j2.json"], capsys, monkeypatch)
    rep = json.loads(out)
    assert rep["min_poly"] == "t^2"
    assert rep["commutant_dim"] == rep["bicommutant_dim"] == 2
    assert rep["transpose_condition_A"] is True


@pytest.mark.parametrize("argv,code,etype", [
    (["analyze", "nonsquare.json"], 2, "NotSquare"),
    (["check-pair", "pair_mismatch.json"], 2, "SizeMismatch"),
    (["solve-sylvester", "syl_same.json"], 4, "NotCoprime"),
    (["decompose", "deg25.json"], 3, "DegreeTooLarge"),
    (["analyze", "missing.json"], 2, "InputError"),
    (["analyze", "j2.json", "--field", "fp"], 2, "InputError"),
])
def test_errors(argv, code, etype, capsys, monkeypatch):
    got, out = run(argv, capsys, monkeypatch)
    err = json.loads(out)["error"]
    assert got == code == err["exit_code"]
    assert err["type"] == etype


def test_not_coprime_reports_gcd(capsys, monkeypatch):
    _, out = run(["solve-sylvester", "syl_same.json"], capsys, monkeypatch)
    assert json.loads(out)["error"]["gcd"] == "t^2"


@pytest.mark.parametrize("argv", [c[1] for c in CASES if c[2] == 0])
def test_verify_passes(argv, capsys, monkeypatch):
    if argv[0] == "analyze" and "--random-suite" in argv:
        pytest.skip("suite mode reports its own failures")
    code, out = run(argv + ["--verify"], capsys, monkeypatch)
    rep = json.loads(out)
    assert code == 0 and rep["verified"] is True and rep["verify_failures"] == []


def test_out_file(tmp_path, capsys, monkeypatch):
    target = tmp_path / "r.json"
    code, out = run(["analyze", "j2.json", "--out", str(target)], capsys, monkeypatch)
    assert code == 0 and out == ""
    with open(os.path.join(GOLDEN, "analyze_j2.out.json"), encoding="utf-8") as fh:
        assert target.read_text(encoding="utf-8") == fh.read()


def test_input_hash_tracks_field(capsys, monkeypatch):
    _, q = run(["analyze", "i2.json"], capsys, monkeypatch)
    _, f = run(["analyze", "i2.json", "--field", "fp", "--prime", "5"], capsys, monkeypatch)
    assert json.loads(q)["input_hash"] != json.loads(f)["input_hash"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bicomm", "analyze", "j2.json"],
                       cwd=GOLDEN, capture_output=True, text=True)
    assert r.returncode == 0
    with open(os.path.join(GOLDEN, "analyze_j2.out.json"), encoding="utf-8") as fh:
        assert r.stdout == fh.read()
