import json
import subprocess
import sys

import jsonschema
import pytest

from fusionkit import datasets
from fusionkit.cli import main, render_table
from fusionkit.schemas import SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def ising_obj():
    return json.loads(datasets.path("ising").read_text())


def test_validate_ising(capsys):
    code, out, _ = run(capsys, "validate", "examples/ising.json")
    assert code == 0
    assert out.rstrip().endswith("overall: PASS")


def test_mult_verify_ising(capsys):
    code, out, _ = run(capsys, "mult", "examples/ising.json", "--verify")
    assert code == 0
    assert "tables agree" in out
    code, out, _ = run(capsys, "mult", "ising", "--verify", "--json")
    data = json.loads(out)
    assert data["restriction"]["entries"] == [[1], [1]]
    assert data["formula"]["entries"] == [[1], [1]]
    assert data["match"] is True


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "chartable", "nonexistent.json")
    assert code == 2
    assert "nonexistent.json" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate", "ising")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "twisted", "fibonacci")[0] == 2


def test_bad_precision_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("FUSIONKIT_PRECISION", "lots")
    assert run(capsys, "chartable", "ising")[0] == 2


def test_invalid_bundle_exits_1(capsys, tmp_path):
    obj = ising_obj()
    obj["zeta"][4] = [0, 0, 2]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1
    assert "[FAIL] zeta-homomorphism" in out
    code, out, _ = run(capsys, "report", str(p))
    assert code == 1
    assert run(capsys, "mult", str(p))[0] == 1


def test_mult_mismatch_prints_diff(capsys, monkeypatch):
    from fusionkit import cli
    from fusionkit.multiplicity import MultiplicityTable

    real = cli.formula_multiplicities

    def skewed(bundle):
        t = real(bundle)
        return MultiplicityTable(t.rows, t.cols, [[v + 1 for v in r] for r in t.entries])

    monkeypatch.setattr(cli, "formula_multiplicities", skewed)
    code, out, _ = run(capsys, "mult", "ising", "--verify")
    assert code == 1
    assert "--- restriction" in out and "+++ formula" in out
    assert "+| X1 | 2     |" in out


def test_chartable_text(capsys):
    code, out, _ = run(capsys, "chartable", "rep_s3", "--ascii")
    assert code == 0
    assert "| E0 | 1   | 6        | 1 | 1  | 2  |" in out
    code, out, _ = run(capsys, "chartable", "rep_s3")
    assert "│ E0 │ 1   │ 6        │ 1 │ 1  │ 2  │" in out


def test_twisted_header_and_m(capsys):
    code, out, _ = run(capsys, "twisted", "ising")
    assert code == 0
    assert out.splitlines()[1].startswith("gauge:")
    assert "m = (1/2*E(8)-1/2*E(8)^3)*sigma" in out
    data = json.loads(run(capsys, "twisted", "ising", "--json")[1])
    (ext,) = data["extensions"]
    assert ext["m"] == {"sigma": "1/2*E(8)-1/2*E(8)^3"}
    assert ext["values"]["1"] == {"sigma": "E(8)-E(8)^3"}


def test_crossed_s_json(capsys):
    data = json.loads(run(capsys, "crossed-s", "ising", "--json")[1])
    assert data["rows"] == ["1", "f"]
    assert data["entries"] == [["E(8)-E(8)^3", "E(8)-E(8)^3"], ["E(8)-E(8)^3", "-E(8)+E(8)^3"]]


COMMANDS = [("validate",), ("chartable",), ("chartable", "--ring", "Z"), ("codegrees",),
            ("twisted",), ("mult", "--verify"), ("crossed-s",), ("report",)]


@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: "-".join(c))
@pytest.mark.parametrize("name", ["ising", "rep_s3", "vec_z3_graded"])
def test_json_schema(capsys, cmd, name):
    code, out, _ = run(capsys, cmd[0], name, *cmd[1:], "--json")
    assert code == 0
    jsonschema.validate(json.loads(out), SCHEMAS[cmd[0]])


def test_ring_only_bundle(capsys):
    assert run(capsys, "chartable", "fibonacci")[0] == 0
    code, out, _ = run(capsys, "report", "fibonacci", "--json")
    assert code == 0
    jsonschema.validate(json.loads(out), SCHEMAS["report"])


def test_report_is_byte_identical():
    cmd = [sys.executable, "-m", "fusionkit", "report", "ising"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_render_table_shapes():
    text = render_table(["a", "bb"], [["1", "2"]], ascii_only=True)
    assert text.splitlines() == ["+---+----+", "| a | bb |", "+---+----+", "| 1 | 2  |",
                                 "+---+----+"]
