import json
import subprocess
import sys
from pathlib import Path

import pytest

from leonard.checks import SUITES
from leonard.cli import main

FIX = Path(__file__).parent / "fixtures" / "cli"
VALID = FIX / "krawtchouk_d2.json"
WITH_EXPECTED = FIX / "krawtchouk_d2_with_expected.json"
BAD_EXPECTED = FIX / "krawtchouk_d2_bad_expected.json"
TAMPERED = FIX / "krawtchouk_d2_phi2_tampered.json"
MALFORMED = FIX / "malformed.json"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", VALID)
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run(capsys, "validate", TAMPERED)
    assert code == 1
    viol = json.loads(out)["violations"]
    assert {"condition": "PA3", "index": [2]} in [{k: v[k] for k in ("condition", "index")} for v in viol]
    code, _, err = run(capsys, "validate", MALFORMED)
    assert code == 2 and err.startswith(f"{MALFORMED}:5:")
    code, _, err = run(capsys, "validate", FIX / "does_not_exist.json")
    assert code == 2


@pytest.mark.parametrize("name, line, needle", [("bad_field.json", 2, "not prime"), ("bad_element.json", 7, "2/0")])
def test_line_anchored_errors(capsys, name, line, needle):
    code, _, err = run(capsys, "validate", FIX / name)
    assert code == 2
    assert err.startswith(f"{FIX / name}:{line}:") and needle in err


def test_check_all_suites(capsys, tmp_path):
    rpt = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", WITH_EXPECTED, "--report", rpt)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and set(doc["suites"]) == set(SUITES)
    assert all(s["status"] == "pass" for s in doc["suites"].values())
    assert doc["input_digest"].startswith("sha256:")
    assert "timing" not in doc
    assert rpt.read_text() == out
    assert doc["suites"]["diagonal"]["info"]["a"] == ["4", "1", "-2"]


def test_check_failures(capsys):
    code, out, _ = run(capsys, "check", BAD_EXPECTED)
    assert code == 1
    doc = json.loads(out)
    assert doc["suites"]["intersection-oracle"]["status"] == "fail"
    assert all(doc["suites"][s]["status"] != "fail" for s in SUITES if s != "intersection-oracle")
    code, out, _ = run(capsys, "check", TAMPERED)
    doc = json.loads(out)
    assert code == 1 and doc["suites"]["validation"]["status"] == "fail"
    assert all(doc["suites"][s]["status"] == "skipped" for s in SUITES if s != "validation")


def test_check_suite_flag(capsys):
    code, out, _ = run(capsys, "check", VALID, "--suite", "td")
    doc = json.loads(out)
    assert code == 0 and set(doc["suites"]) == {"validation", "td"}
    assert doc["suites"]["td"]["info"]["beta"] == "2"
    code, _, _ = run(capsys, "check", VALID, "--suite", "nonsense")
    assert code == 2
    code, out, _ = run(capsys, "check", TAMPERED, "--suite", "td")
    assert code == 1 and not json.loads(out)["ok"]


def test_check_parallel_matches_sequential(capsys):
    _, seq, _ = run(capsys, "check", WITH_EXPECTED)
    _, par, _ = run(capsys, "check", WITH_EXPECTED, "--parallel")
    assert seq == par
    code, out, _ = run(capsys, "check", VALID, "--timing")
    assert code == 0 and "timing" in json.loads(out)


def test_construct_and_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "real.json"
    code, _, _ = run(capsys, "construct", VALID, "--out", out_file)
    doc = json.loads(out_file.read_text())
    assert code == 0 and doc["d"] == 2
    assert doc["A_star"]["rows"] == [["0", "-4", "0"], ["0", "1", "-4"], ["0", "0", "2"]]
    assert len(doc["idempotents"]["E"]) == 3
    code, _, _ = run(capsys, "construct", TAMPERED, "--out", tmp_path / "x.json")
    assert code == 1
    code, out, _ = run(capsys, "roundtrip", VALID)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "roundtrip", FIX / "gf4_d1.json")
    assert code == 0


def test_transform(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    code, _, _ = run(capsys, "transform", VALID, "--g", "Down", "--out", out_file)
    doc = json.loads(out_file.read_text())
    assert code == 0
    assert (doc["theta"], doc["varphi"], doc["phi"]) == (["2", "1", "0"], ["-2", "-2"], ["-4", "-4"])
    code, _, _ = run(capsys, "transform", VALID, "--g", "star.star.down.down", "--out", out_file)
    assert json.loads(out_file.read_text()) == json.loads(VALID.read_text())
    code, _, _ = run(capsys, "transform", VALID, "--g", "up", "--out", out_file)
    assert code == 2


def test_intersections(capsys):
    code, out, _ = run(capsys, "intersections", VALID)
    assert code == 0 and json.loads(out)["b"] == ["-4", "-2"]
    for m in ("bbcc", "cibiform", "bici", "bcform"):
        code, out2, _ = run(capsys, "intersections", VALID, "--method", m)
        assert code == 0 and out2 == out
    code, out, _ = run(capsys, "intersections", VALID, "--method", "all")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] and set(doc["methods"]) == {"brute", "bbcc", "cibiform", "bici", "bcform"}
    code, _, err = run(capsys, "intersections", FIX / "gf4_d1.json", "--method", "bici")
    assert code == 2 and "d >= 2" in err
    code, _, _ = run(capsys, "intersections", TAMPERED)
    assert code == 1


def test_family_gen(capsys, kraw, tmp_path):
    params = '{"s":"1","s_star":"1","r":"2","theta0":"0","theta0_star":"0"}'
    code, out, _ = run(capsys, "family", "gen", "--name", "krawtchouk", "--d", "2", "--params", params, "--field", "Q")
    doc = json.loads(out)
    assert code == 0
    assert doc["parray"] == kraw.to_json()
    assert doc["intersections"]["c"] == ["1", "2"]
    assert doc["spec"]["family"] == "Krawtchouk"
    pa_file = tmp_path / "gen.json"
    run(capsys, "family", "gen", "--name", "krawtchouk", "--d", "2", "--params", params, "--out", pa_file)
    code, out, _ = run(capsys, "check", pa_file)
    assert code == 0 and json.loads(out)["ok"]


def test_family_errors(capsys):
    code, _, err = run(capsys, "family", "gen", "--name", "orphan", "--d", "3", "--field", "Q",
                       "--params", '{"h":1,"h_star":1,"s":2,"s_star":3,"r":1}')
    assert code == 1 and "ConstraintViolated" in err
    code, _, err = run(capsys, "family", "gen", "--name", "krawtchouk", "--d", "2", "--params", '{"s":1,"s_star":1,"r":1}')
    assert code == 1 and "Inadmissible" in err
    code, _, _ = run(capsys, "family", "gen", "--name", "krawtchouk", "--d", "2", "--params", '{"s":1')
    assert code == 2
    code, _, _ = run(capsys, "family", "gen", "--name", "jacobi", "--d", "2")
    assert code == 2
    code, _, err = run(capsys, "family", "sample", "--name", "orphan", "--d", "3", "--field", "GF:2")
    assert code == 1 and "ExhaustedSearch" in err


def test_family_sample_and_table(capsys):
    argv = ("family", "sample", "--name", "q-racah", "--d", "4", "--field", "GF:13", "--seed", "7", "--count", "3")
    code, out, _ = run(capsys, *argv)
    assert code == 0 and len(json.loads(out)["specs"]) == 3
    _, again, _ = run(capsys, *argv)
    assert again == out
    code, out, _ = run(capsys, "family", "table", "--name", "krawtchouk", "--d", "2", "--params", '{"s":1,"s_star":1,"r":2}')
    assert code == 0 and out.splitlines()[0] == "Krawtchouk d=2 over Q"


def test_subprocess_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "leonard", "check", str(WITH_EXPECTED)]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0 and a.stdout == b.stdout
    bad = subprocess.run([sys.executable, "-m", "leonard", "validate", str(MALFORMED)], capture_output=True)
    assert bad.returncode == 2
