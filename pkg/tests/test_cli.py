import json
import subprocess
import sys
from pathlib import Path

import pytest

from dhopf import cli
from dhopf.derived import CatalogObject, Decomposition
from dhopf.cli import main

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"
CASES = json.loads((FIXTURES / "golden_cases.json").read_text())


def run(capsys, *argv):
    argv = [a.replace("{fixtures}", str(FIXTURES)) for a in argv]
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(capsys, *CASES[name])
    assert code == 0
    assert out == (GOLDEN / f"{name}.out").read_text()


def test_tensor_example(capsys):
    code, out, _ = run(capsys, "tensor", "--n", "4", "N:0,0", "N:0,0")
    assert code == 0
    assert out.strip() == '{"summands":[{"kind":"N","i":0,"shift":-2,"mult":1}]}'


def test_tensor_check_verdict(capsys):
    code, out, _ = run(capsys, "tensor", "--n", "4", "M:0,2,0", "N:1,0", "--check")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "MATCH"
    assert doc["predicted"] == doc["computed"]


def test_decompose_zero_complex(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "4", "--file", "{fixtures}/zero_complex.json")
    assert code == 0 and json.loads(out) == {"summands": []}


def test_gentle_odd_cycle(capsys):
    code, out, _ = run(capsys, "gentle", "--file", "{fixtures}/z3cycle.txt")
    doc = json.loads(out)
    assert code == 0 and doc["admissible"] is False and "odd cycle length" in doc["reason"]


def test_gentle_inline_text(capsys):
    code, out, _ = run(capsys, "gentle", "--text", "vertices 0 1; arrows a:0->1 b:1->0; relations b.a a.b")
    assert code == 0 and json.loads(out)["admissible"] is True


def test_classify_verdict(capsys):
    code, out, _ = run(capsys, "classify", "--n", "6")
    assert code == 0 and json.loads(out)["derived_discrete"] is True


def test_verify_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--format", "table")
    assert code == 0 and out.strip().endswith("OK")


def test_tensor_mismatch_exits_one(capsys, monkeypatch):
    wrong = Decomposition([CatalogObject.N(4, 1, 0)])
    monkeypatch.setattr(cli, "predict_tensor", lambda a, b: wrong)
    code, out, _ = run(capsys, "tensor", "--n", "4", "N:0,0", "N:0,0", "--check")
    assert code == 1 and json.loads(out)["verdict"] == "MISMATCH"


def test_verify_mismatch_exits_one(capsys, monkeypatch):
    from dhopf import derived

    real = derived.predict_tensor
    monkeypatch.setattr(derived, "predict_tensor", lambda a, b: real(a, b).shifted(1))
    code, out, _ = run(capsys, "verify", "--n", "2", "--grid", "small", "--no-tables")
    doc = json.loads(out)
    assert code == 1
    assert doc["total_mismatches"] == doc["reports"][0]["checked"] > 0


@pytest.mark.parametrize("argv", [
    ["tensor", "--n", "3", "N:0,0", "N:0,0"],
    ["tensor", "--n", "4", "Q:0,0", "N:0,0"],
    ["tensor", "--n", "4", "M:0,-1,0", "N:0,0"],
    ["decompose", "--n", "4"],
    ["decompose", "--n", "4", "--file", "{fixtures}/missing.json"],
    ["decompose", "--n", "4", "--file", "{fixtures}/z3cycle.txt"],
    ["decompose", "--n", "6", "--file", "{fixtures}/mixed_complex.json"],
    ["gentle", "--file", "{fixtures}/bad_quiver.txt"],
    ["gentle"],
    ["classify", "--datum", "{fixtures}/bad_datum.json"],
    ["dual", "--datum", "{fixtures}/bad_datum.json"],
    ["classify"],
])
def test_input_errors_exit_two(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_parse_error_reports_offset(capsys):
    code, _, err = run(capsys, "gentle", "--file", "{fixtures}/bad_quiver.txt")
    assert code == 2 and "at offset" in err


def test_internal_error_exits_three(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("replacement is not minimal")

    monkeypatch.setattr(cli, "decompose", boom)
    code, _, err = run(capsys, "decompose", "--n", "4", "N:0,0")
    assert code == 3 and err.startswith("internal error")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tensor", "--n", "4", "N:0,0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["decompose", "--n", "4", "--depth", "-1", "N:0,0"])


def test_depth_flag_and_env(capsys, monkeypatch):
    _, ref, _ = run(capsys, "decompose", "--n", "4", "N:0,0", "M:1,2,0")
    _, out, _ = run(capsys, "decompose", "--n", "4", "--depth", "3", "N:0,0", "M:1,2,0")
    monkeypatch.setenv("DERIVED_DEPTH", "5")
    _, env, _ = run(capsys, "decompose", "--n", "4", "N:0,0", "M:1,2,0")
    assert ref == out == env


def test_byte_determinism():
    argv = [sys.executable, "-m", "dhopf", "dual", "--n", "4"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True, env={"PYTHONHASHSEED": "123", "PATH": ""}).stdout
    assert a == b
    assert a == (GOLDEN / "dual_n4.out").read_bytes()
