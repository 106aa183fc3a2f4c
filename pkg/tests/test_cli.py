import io
import json
import subprocess
import sys

import pytest

from moulcalc import cli

FIELD = {"nu": 2, "lambda": ["2", "5"], "terms": [
    {"coef": "1", "exponents": [2, 0], "direction": 0},
    {"coef": "-3", "exponents": [1, 1], "direction": 1},
    {"coef": "1/2", "exponents": [0, 3], "direction": 0},
]}
RESONANT = {"nu": 2, "lambda": ["1", "-1"], "terms": [
    {"coef": "1", "exponents": [2, 1], "direction": 0},
    {"coef": "2", "exponents": [2, 0], "direction": 1},
]}
DIFFEO = {"nu": 1, "multipliers": ["3"], "terms": [{"coef": "1", "exponents": [2], "direction": 0}]}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in (("field", FIELD), ("resonant", RESONANT), ("diffeo", DIFFEO)):
        p = tmp_path / (name + ".json")
        p.write_text(json.dumps(data))
        paths[name] = str(p)
    return paths


def test_mould_show_exp():
    code, out, _ = run("mould", "show", "--name", "Exp", "--word", "1,2,3")
    assert code == 0 and out.strip() == "1/6"


def test_mould_show_json_and_export():
    code, out, _ = run("mould", "show", "--name", "Na", "--word", "[1,0],[0,1]", "--spectrum", "2,5", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "1/14"
    code, out, _ = run("mould", "show", "--name", "J", "--export", "--letters", "1,2", "--max-len", "2")
    data = json.loads(out)
    assert code == 0 and data["L"] == 2
    assert {"value": "-1/2", "word": "1,2"} in data["entries"]


def test_mould_check_exit_codes():
    assert run("mould", "check", "--name", "J", "--symmetry", "alternel", "--max-len", "4")[0] == 0
    code, out, _ = run("mould", "check", "--name", "J", "--symmetry", "alternal", "--max-len", "3", "--format", "json")
    assert code == 2 and json.loads(out)["counterexample"] is not None


def test_mould_check_is_byte_identical():
    args = ("mould", "check", "--name", "S", "--max-len", "3", "--samples", "2", "--seed", "4", "--format", "json")
    assert run(*args)[1] == run(*args)[1]


def test_mould_op():
    code, out, _ = run("mould", "op", "--op", "mul", "--name", "S", "--right", "Na", "--word", "1,2")
    assert code == 0 and out.strip() == "1/6"
    code, out, _ = run("mould", "op", "--op", "inverse", "--name", "S", "--word", "3")
    assert out.strip() == "1/3"


def test_field_commands(files):
    code, out, _ = run("field", "linearize", "--input", files["field"], "--degree", "5", "--verify-oracle", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["oracle_agrees"] is True
    assert data["conjugated"] == [[{"coef": "2", "exponents": [1, 0]}], [{"coef": "5", "exponents": [0, 1]}]]
    assert run("field", "linearize", "--input", files["resonant"], "--degree", "4")[0] == 2
    code, out, _ = run("field", "prenormal", "--input", files["resonant"], "--degree", "4", "--verify-lie", "--format", "json")
    assert code == 0 and json.loads(out)["nonresonant_terms"] == []
    code, out, _ = run("field", "scan", "--input", files["resonant"], "--max-len", "2", "--format", "json")
    assert json.loads(out)["resonant"] == ["[1,1]", "[1,1],[1,1]"]


def test_diffeo_and_arb(files):
    code, out, _ = run("diffeo", "linearize", "--input", files["diffeo"], "--degree", "4", "--verify-oracle", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["oracle_agrees"] and data["normalizer"][0][1] == {"coef": "1/6", "exponents": [2]}
    code, out, _ = run("arb", "expand", "--word", "[1,0],[0,1]", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["residual_zero"] and len(data["forests"]) == 2


def test_usage_errors(files, tmp_path):
    assert run("mould", "bogus")[0] == 1
    assert run("mould", "show", "--name", "Exp")[0] == 1
    assert run("field", "linearize", "--input", str(tmp_path / "missing.json"))[0] == 1
    code, _, err = run("mould", "show", "--name", "Na", "--word", "1,-1")
    assert code == 1 and "PoleAtWord" in err


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    assert run("mould", "show", "--name", "Exp", "--word", "1,2", "--format", "json", "--output", str(target))[0] == 0
    assert json.loads(target.read_text())["value"] == "1/2"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "moulcalc.cli", "mould", "show", "--name", "Exp", "--word", "1,2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/6"
