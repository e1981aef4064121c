import io
import json
import subprocess
import sys

import pytest

from acirank.cli import run_command
from acirank.parsing import matrix_from_rows
from acirank.scalars import FieldSpec

from conftest import data_path


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out) if out else None, err


def test_wst_report():
    code, rep, _ = run_json("wst", "--input", data_path("m5.aci"))
    assert code == 0 and rep["schema"] == 1 and rep["command"] == "wst"
    p = rep["payload"]
    assert p["dims"] == {"W": [1, 2], "S": [2, 2], "T": [2, 1]}
    assert p["maxrank"] == 4
    assert p["f_bot"] == [1, 2] and p["f_top"] == [1, 2, 3, 4]


def test_blocks_in_reports_reparse():
    _, rep, _ = run_json("wst", "--input", data_path("m5.aci"))
    field = FieldSpec.parse(rep["field"])
    for name, block in rep["payload"]["blocks"].items():
        M = matrix_from_rows(block["entries"], field, m=block["dims"][0], n=block["dims"][1])
        assert M.to_strings() == block["entries"]


def test_rank_with_field_override():
    code, rep, _ = run_json("rank", "--input", data_path("ones.aci"), "--field", "gf(5)")
    assert code == 0 and rep["field"] == "gf(5)"
    assert rep["payload"]["max_rank"] == 2 and rep["payload"]["rank_set"] == [1, 2]


def test_factor_sets_of_identity():
    code, rep, _ = run_json("factor-sets", "--input", data_path("i2.aci"))
    assert code == 0
    assert rep["payload"]["members"] == []
    assert "matrix is FmR" in rep["diagnostics"]


def test_semifactor_kind():
    code, rep, _ = run_json("factor-sets", "--input", data_path("i2.aci"), "--kind", "semifactor")
    assert code == 0 and [1, 2] in rep["payload"]["members"]


def test_zero_block_success_and_refusal():
    code, rep, _ = run_json("zero-block", "--input", data_path("m5.aci"), "--rho", "4")
    assert code == 0 and (rep["payload"]["r"], rep["payload"]["s"]) == (4, 2)
    code, rep, _ = run_json("zero-block", "--input", data_path("m5.aci"), "--rho", "3")
    assert code == 1 and rep["payload"]["refused"]


def test_zero_block_rho_out_of_range():
    code, _, err = run("zero-block", "--input", data_path("m5.aci"), "--rho", "5")
    assert code == 2 and "rho" in err


def test_constant_rank_outcomes():
    code, rep, _ = run_json("constant-rank", "--input", data_path("unit_upper.aci"))
    assert code == 0 and rep["payload"]["constant"] and rep["payload"]["rho"] == 2
    assert rep["payload"]["canonical_form"]["form_tag"] == "square-ii"
    code, rep, _ = run_json("constant-rank", "--input", data_path("ones.aci"))
    assert code == 1 and not rep["payload"]["constant"]
    assert rep["payload"]["low"]["rank"] == 1 and rep["payload"]["high"]["rank"] == 2


def test_constant_rank_on_small_field_notes_missing_form():
    code, rep, _ = run_json("constant-rank", "--input", data_path("i2.aci"), "--field", "gf(2)")
    assert code == 0 and "canonical_form" not in rep["payload"]
    assert any("no canonical form" in d for d in rep["diagnostics"])


@pytest.mark.parametrize("argv", [
    ("validate", "--input", "missing.aci"),
    ("validate", "--input", "bad_sharing.aci"),
    ("validate", "--input", "bad_syntax.aci"),
    ("rank", "--input", "m5.aci", "--field", "gf(4)"),
    ("rank", "--input", "m5.aci", "--budget", "0"),
    ("bogus",),
    ("rank",),
])
def test_input_errors_exit_2(argv):
    argv = [data_path(a) if a.endswith(".aci") else a for a in argv]
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert "Traceback" not in err


def test_budget_exhaustion_is_an_input_error(tmp_path):
    path = tmp_path / "wide.aci"
    path.write_text("field: gf(2)\n" + ", ".join("x%d" % j for j in range(13)) + "\n")
    code, _, err = run("factor-sets", "--input", str(path))
    assert code == 2 and "TooManyColumns" in err


def test_degenerate_input():
    code, rep, _ = run_json("validate", "--input", data_path("degenerate.aci"))
    assert code == 0
    assert rep["payload"]["shape"] == {"tag": "wide", "degenerate": True, "void": False}


def test_text_output():
    code, out, _ = run("rank", "--input", data_path("m5.aci"))
    assert code == 0 and "max_rank: 4" in out


def test_json_is_byte_stable():
    argv = ["rank", "--input", data_path("ones.aci"), "--field", "gf(5)", "--json", "--seed", "9"]
    first = run(*argv)[1]
    assert all(run(*argv)[1] == first for _ in range(3))
    again = subprocess.run([sys.executable, "-m", "acirank", *argv], capture_output=True, text=True)
    assert again.returncode == 0 and again.stdout == first
