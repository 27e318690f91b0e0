import json
import subprocess
import sys

import pytest

from lintree.cli import main
from lintree.lsp_engine import parse_table

from conftest import FIG4, FIG4_TABLE, K13, STAR_FIG3


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_fig4(capsys, spec_file):
    code, out, err = run(capsys, "decide", spec_file(FIG4), "1 3 3 3 1 1")
    assert code == 0
    assert parse_table(out, FIG4) == parse_table(FIG4_TABLE, FIG4)


def test_decide_no(capsys, spec_file):
    code, out, err = run(capsys, "decide", spec_file(K13), "2 1 1")
    assert code == 1 and out == "" and "not achievable" in err
    code, out, _ = run(capsys, "decide", spec_file(K13), "2 1 1", "--unordered")
    assert code == 0 and out.strip()


def test_decide_bad_sum_is_usage_error(capsys, spec_file):
    code, out, err = run(capsys, "decide", spec_file(K13), "1 1")
    assert code == 2 and out == "" and err.startswith("error:")


def test_validate_list(capsys, spec_file):
    code, out, _ = run(capsys, "validate-list", spec_file(STAR_FIG3), "1 ^2 1 ^0 1 ^0 1 ^0 1")
    assert code == 0 and out.strip() == "valid"
    code, out, _ = run(capsys, "validate-list", spec_file(K13), "^3 1")
    assert code == 1 and out.startswith("invalid")
    code, _, err = run(capsys, "validate-list", spec_file(FIG4), "1 ^0 1")
    assert code == 2 and "generalized star" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    code, _, err = run(capsys, "tree-info", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read tree" in err


def test_tree_info(capsys, spec_file):
    code, out, _ = run(capsys, "tree-info", spec_file(FIG4))
    assert code == 0
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert fields["n"] == "12" and fields["diameter"] == "6"


def test_enumerate(capsys, spec_file):
    code, out, _ = run(capsys, "enumerate", spec_file(K13))
    assert code == 0 and out.split("\n")[:2] == ["1 1 1 1", "1 2 1"]


def test_realize_verify_roundtrip(capsys, spec_file, tmp_path):
    spec = spec_file(FIG4)
    mat = tmp_path / "A.json"
    code, out, err = run(capsys, "realize", spec, "1 3 3 3 1 1", "--eigenvalues", "1,2,3,4,5,7",
                         "--out", str(mat))
    assert code == 0 and out == "" and "spectral error" in err
    code, out, _ = run(capsys, "verify", str(mat), spec, "1 3 3 3 1 1", "--eigenvalues", "1,2,3,4,5,7")
    assert code == 0 and out.startswith("verification: PASS")
    code, out, _ = run(capsys, "verify", str(mat), spec, "1 3 3 3 1 1", "--json")
    assert code == 1 and json.loads(out)["ok"] is False


def test_realize_stdout_and_bad_eigenvalues(capsys, spec_file):
    spec = spec_file(K13)
    code, out, _ = run(capsys, "realize", spec, "1 2 1")
    assert code == 0 and json.loads(out)["n"] == 4
    assert run(capsys, "realize", spec, "1 2 1", "--eigenvalues", "1,2")[0] == 2
    assert run(capsys, "realize", spec, "1 2 1", "--eigenvalues", "1,x,2")[0] == 2
    assert run(capsys, "realize", spec, "1 2 1", "--eigenvalues", "3,2,1")[0] == 1
    assert run(capsys, "realize", spec, "2 1 1")[0] == 1


def test_diminimal_realize(capsys, spec_file, tmp_path):
    mat = tmp_path / "d.json"
    code, out, _ = run(capsys, "diminimal", spec_file(FIG4), "--realize", "--out", str(mat))
    assert code == 0 and out.startswith("# diameter 6, construction case1")
    assert json.loads(mat.read_text())["n"] == 12


def test_degree_list_and_maxmult(capsys, spec_file):
    code, out, _ = run(capsys, "degree-list", spec_file(K13))
    assert code == 0 and out.splitlines()[0] == "2 1 1"
    code, out, _ = run(capsys, "maxmult", spec_file(K13))
    assert code == 0 and "formula: 2" in out and "enumerated: 2" in out


def test_census_small(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--max-n", "6", "--out", str(tmp_path))
    assert code == 0
    assert json.loads(out.splitlines()[0])["trees_with_failures"] == 0
    assert (tmp_path / "census.jsonl").exists()


def test_console_entry_point(spec_file):
    proc = subprocess.run([sys.executable, "-m", "lintree.cli", "decide", spec_file(K13), "2 1 1"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == ""


@pytest.mark.parametrize("seed", ["0", "3"])
def test_realize_is_deterministic(capsys, spec_file, seed):
    spec = spec_file(FIG4)
    outs = {run(capsys, "realize", spec, "1 3 3 3 1 1", "--seed", seed)[1] for _ in range(2)}
    assert len(outs) == 1
