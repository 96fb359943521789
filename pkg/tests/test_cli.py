import json
import subprocess
import sys

import pytest

from realmoduli.cli import EX_INVALID, EX_OK, EX_USAGE, run


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_enumerate_counts(capsys):
    code, cap = out_of(capsys, ["enumerate", "--n", "5", "--sigma", "id", "--json"])
    assert code == EX_OK and json.loads(cap.out)["count"] == 26


def test_w1_0_5(capsys):
    code, cap = out_of(capsys, ["w1", "--k", "0", "--l", "5", "--json"])
    data = json.loads(cap.out)
    assert code == EX_OK and len(data["trees"]) == 3 and len(data["strata"]) == 9


def test_cover_json(capsys):
    code, cap = out_of(capsys, ["cover", "--k", "0", "--l", "4", "--chi", "--json"])
    data = json.loads(cap.out)
    assert code == EX_OK and data["components"] == 2 and data["chi"] == 0 and data["cells"] == 6


def test_invariants_text(capsys):
    code, cap = out_of(capsys, ["invariants", "--k", "0", "--l", "5", "--cover"])
    assert code == EX_OK
    assert "chi: -6" in cap.out and "genus: 4" in cap.out


def test_poset_dot(capsys):
    code, cap = out_of(capsys, ["poset", "--k", "0", "--l", "4", "--dot"])
    assert code == EX_OK and cap.out.startswith("digraph")


def test_verify_signs(capsys):
    code, cap = out_of(capsys, ["verify-signs", "--k", "1", "--l", "3", "--numeric", "--seeds", "2"])
    assert code == EX_OK and cap.out.rstrip().endswith("OK")


@pytest.mark.parametrize("argv", [["enumerate", "--k", "0", "--l", "2"], ["w1", "--k", "-1", "--l", "4"]])
def test_invalid_input(capsys, argv):
    assert out_of(capsys, argv)[0] == EX_INVALID


@pytest.mark.parametrize("argv", [["bogus"], [], ["enumerate"], ["enumerate", "--n", "4", "--k", "0"]])
def test_usage(capsys, argv):
    assert out_of(capsys, argv)[0] == EX_USAGE


def test_out_file(tmp_path, capsys):
    p = tmp_path / "t.json"
    assert run(["poset", "--k", "1", "--l", "2", "--json", "--out", str(p)]) == EX_OK
    assert capsys.readouterr().out == ""
    assert json.loads(p.read_text())


def test_output_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "realmoduli", "cover", "--k", "1", "--l", "3", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--threads", "2"], capture_output=True, check=True).stdout
    assert a == b and a
