import csv
import io
import json
import subprocess
import sys

import pytest

from superfock.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_algebra_text(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--alpha", "-2/3")
    assert code == 0
    assert "algebra.super_jacobi" in out and "FAIL" not in out


def test_verify_algebra_second_sample(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--alpha", "5/2", "--output", "json")
    rows = json.loads(out)
    assert code == 0 and all(r["status"] == "pass" and r["max_defect"] == "0" for r in rows)
    assert all(r["anchor"] for r in rows)


@pytest.mark.parametrize("alpha", ["3", "0"])
def test_natural_alpha_is_config_error(capsys, alpha):
    code, _, err = run(capsys, "verify", "algebra", "--alpha", alpha)
    assert code == 2 and "natural" in err


def test_parse_errors(capsys):
    assert run(capsys, "verify", "algebra", "--alpha", "x/y")[0] == 2
    assert run(capsys, "verify", "nothing", "--alpha", "-2")[0] == 2
    assert run(capsys, "verify", "fock", "--alpha", "-2", "--N", "0")[0] == 2
    assert run(capsys, "verify", "fock", "--alpha", "-2", "--output", "yaml")[0] == 2


def test_verify_fock_json(capsys):
    code, out, _ = run(capsys, "verify", "fock", "--alpha", "-2", "--N", "4", "--output", "json")
    rows = json.loads(out)
    assert code == 0
    names = [r["check_name"] for r in rows]
    assert names == sorted(names)
    gram = next(r for r in rows if r["check_name"] == "fock.gram_table")
    assert gram["details"]["diagonal"]["<z1^2,z1^2>"] == "12"


def test_verify_fock_natural_hook(capsys):
    code, out, _ = run(capsys, "verify", "fock", "--allow-natural", "--alpha", "1", "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["check_name"] == "fock.nondegenerate" and rows[0]["status"] == "expected-fail"


def test_verify_group_negative(capsys):
    code, out, _ = run(capsys, "verify", "group", "--alpha", "-2", "--N", "6", "--output", "json")
    rows = {r["check_name"]: r for r in json.loads(out)}
    assert code == 0
    assert rows["group.A2_unitary_norm"]["status"] == "pass"
    assert float(rows["group.A2_unitary_norm"]["max_defect"]) <= 1e-8


def test_verify_group_positive_expected_fail(capsys):
    code, out, _ = run(capsys, "verify", "group", "--alpha", "1/2", "--N", "6", "--output", "json")
    rows = json.loads(out)
    assert code == 0
    a2 = [r for r in rows if r["check_name"].startswith("group.A2")]
    assert a2 and all(r["status"] == "expected-fail" for r in a2)
    assert all(r["status"] == "pass" for r in rows if not r["check_name"].startswith("group.A2"))


def test_verify_group_deterministic(capsys):
    def strip(text):
        rows = json.loads(text)
        for r in rows:
            r.pop("elapsed_ms")
        return rows

    a = strip(run(capsys, "verify", "group", "--alpha", "-2", "--N", "4", "--seed", "7", "--output", "json")[1])
    b = strip(run(capsys, "verify", "group", "--alpha", "-2", "--N", "4", "--seed", "7", "--output", "json")[1])
    assert a == b


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--alpha", "-2", "--output", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["max_defect"] == "2 i" and row["status"] == "pass"
    code, out, _ = run(capsys, "witness", "--alpha", "-2", "--eps", "3,1/2,1,1", "--output", "json")
    assert json.loads(out)[0]["max_defect"] == "7/2 i"
    assert run(capsys, "witness", "--alpha", "-2", "--eps", "1,0,1,1")[0] == 2
    assert run(capsys, "witness", "--alpha", "-2", "--eps", "1,1,1")[0] == 2


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "gram", "--alpha", "-2", "--N", "2", "--form", "bf")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][1:] == ["1", "z1", "z2", "z3", "z4", "z1^2", "z1*z2", "z1*z3", "z1*z4"]
    assert len(rows) == 10 and rows[1][1] == "1"
    assert rows[4][5] == "4" and rows[5][4] == "-4"


def test_gram_S_form(capsys):
    code, out, _ = run(capsys, "gram", "--alpha", "-2", "--N", "1", "--form", "S")
    rows = list(csv.reader(io.StringIO(out)))
    diag = [rows[i][i] for i in range(1, 6)]
    assert diag == ["1", "2", "1", "4", "4"]


def test_act(tmp_path, capsys):
    f = tmp_path / "ones.json"
    f.write_text(json.dumps({"f1": [[1, 0]]}))
    code, out, _ = run(capsys, "act", "--alpha", "-2", "A3(0.5)", str(f))
    d = json.loads(out)
    assert code == 0
    assert abs(d["f1"][0][0] - 1.1276259652063807) < 1e-15
    assert abs(d["f2"][0][0] - 0.5210953054937474) < 1e-15
    code, out, _ = run(capsys, "act", "--alpha", "-2", "", str(f))
    assert json.loads(out) == {"f1": [[1.0, 0.0]], "f2": [], "f3": [], "f4": []}


def test_act_errors(tmp_path, capsys):
    f = tmp_path / "v.json"
    f.write_text("{not json")
    assert run(capsys, "act", "--alpha", "-2", "K1(1)", str(f))[0] == 2
    f.write_text(json.dumps({"f1": [[1, 0]]}))
    assert run(capsys, "act", "--alpha", "-2", "K7(1)", str(f))[0] == 2
    assert run(capsys, "act", "--alpha", "-2", "K1(1)", str(tmp_path / "missing.json"))[0] == 2


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "superfock.cli", "witness", "--alpha", "-1/2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "witness.not_strong" in out.stdout
