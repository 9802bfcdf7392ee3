import json
import subprocess
import sys
from pathlib import Path

import pytest

from gradedlca.cli import main

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize("family, extra", [
    ("vir", []), ("cur-sl2", []), ("v", []), ("cl1", []), ("cl2", []), ("scl2", ["--param", "b=-1"]),
    ("cl3", []), ("ecl", []), ("m1", []), ("m2", []),
])
def test_verify_catalog(capsys, family, extra):
    code, doc = run_json(capsys, "verify", "--family", family, "--window", "-3..3", *extra)
    assert code == 0 and doc["ok"]


def test_verify_module(capsys):
    code, doc = run_json(capsys, "verify", "--family", "vir", "--module", "mab")
    assert code == 0 and doc["reports"][2]["title"].startswith("module identity")


def test_verify_mutation_fails(capsys):
    code, doc = run_json(capsys, "verify", "--file", str(FIX / "mutation_03.json"), "--window", "-3..3")
    assert code == 1 and not doc["ok"]
    jac = [r for r in doc["reports"] if r["title"].startswith("Jacobi")][0]
    assert jac["summary"]["fail"] > 0 and jac["checks"]


def test_output_is_deterministic(capsys, tmp_path):
    args = ("ideals", "--family", "ecl", "--window", "-3..3", "--format", "json")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    target = tmp_path / "out.json"
    assert main([*args, "--out", str(target)]) == 0
    assert target.read_text() == first[1]


def test_ecl_ideals(capsys):
    code, doc = run_json(capsys, "ideals", "--family", "ecl", "--window", "-4..4")
    assert code == 0 and doc["proper_count"] == 3 and doc["pairwise_distinct"]
    assert [e["witness"]["report"]["ok"] for e in doc["ideals"]] == [True] * 3


def test_scl2_ideal(capsys):
    code, doc = run_json(capsys, "ideals", "--family", "scl2", "--param", "b=1/2", "--window", "-3..3")
    assert code == 0 and doc["ideals"][0]["is_ideal"]["ok"]
    code, _, err = run(capsys, "ideals", "--family", "scl2", "--param", "b=1/3")
    assert code == 2 and "2b" in err


def test_ideals_with_explicit_seed(capsys):
    code, doc = run_json(capsys, "ideals", "--family", "ecl", "--seed", "0:(d+s)*(d+2*s)",
                         "--window", "-3..3")
    assert code == 0 and doc["ideals"][0]["closure"]["parts"]["0"] == "d^2 + 3*s*d + 2*s^2"


@pytest.mark.parametrize("family, params, tag", [
    ("cl3", ["--param", "s=3/5"], "CL3"), ("ecl", ["--param", "s=1"], "ECL"),
    ("scl2", ["--param", "b=0", "--param", "s=2"], "SCL2_0"), ("m2", [], "M2"),
])
def test_classify(capsys, family, params, tag):
    code, doc = run_json(capsys, "classify", "--family", family, *params, "--window", "-3..3")
    assert code == 0 and doc["tag"] == tag and doc["ok"]


@pytest.mark.parametrize("name", ["degsum1_dm.json", "degsum1_d0.json", "degsum1_seed.json"])
def test_classify_impossible(capsys, name):
    code, doc = run_json(capsys, "classify", "--file", str(FIX / name))
    assert code == 3 and doc["tag"] == "Impossible" and doc["certificate"]["verified"]


def test_classify_non_class_v_seed(capsys):
    code, _, _ = run(capsys, "classify", "--family", "v")
    assert code == 2


def test_extend(capsys):
    code, doc = run_json(capsys, "extend", "--file", str(FIX / "cl2_seed.json"), "--window", "-3..3")
    assert code == 0
    entries = {(e["i"], e["j"]): e["poly"] for e in doc["brackets"]}
    assert entries[(2, 1)] == "2*d + 3*x + s"


def test_derive(capsys):
    code, doc = run_json(capsys, "derive", "basic", "--family", "vir")
    assert code == 0 and doc["abelian"] and doc["lie_algebra"]["dimension"] == 1
    code, doc = run_json(capsys, "derive", "annihilate", "--family", "vir", "--max-index", "3")
    assert code == 0 and len(doc["lie_algebra"]["basis"]) == 4


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--family", "vir", "--file", "x.json"],
    ["verify", "--family", "nope"],
    ["verify", "--family", "v", "--param", "s"],
    ["verify", "--family", "v", "--param", "s=pi"],
    ["verify", "--family", "v", "--param", "q=1"],
    ["verify", "--family", "v", "--window", "3..-3"],
    ["verify", "--family", "v", "--window", "a..b"],
    ["verify", "--file", "/nonexistent.json"],
    ["classify", "--file", str(FIX / "malformed_seed.json")],
    ["derive", "annihilate", "--family", "vir", "--max-index", "-1"],
])
def test_malformed_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gradedlca.cli", "verify", "--family", "vir"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Jacobi identity of Vir: OK" in proc.stdout
