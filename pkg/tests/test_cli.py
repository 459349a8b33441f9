import json
import subprocess
import sys
from pathlib import Path

import pytest

from qschubert.cli import main, parse_degree
from qschubert.rootsys import cartan_datum

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "name,wplus,wminus",
    [("A2_s1_s1", "1", "1"), ("A2_w0_w0", "1,2,1", "1,2,1"), ("A2_e_e", "", "")],
)
def test_report_matches_golden(capsys, name, wplus, wminus):
    code, out, _ = run(capsys, "report", "--type", "A2", "--wplus", wplus, "--wminus", wminus)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_golden_content():
    w0 = json.loads((GOLDEN / "A2_w0_w0.json").read_text())
    assert w0["stabilizer"]["divisors"] == [2, 2]
    s1 = json.loads((GOLDEN / "A2_s1_s1.json").read_text())
    assert s1["I"] == [2] and s1["leaf"]["k"] == 1
    ee = json.loads((GOLDEN / "A2_e_e.json").read_text())
    assert ee["center_dimension"] == 2


def test_equivalent_reduced_words_give_same_report(capsys):
    _, a, _ = run(capsys, "report", "--type", "A2", "--wplus", "1,2,1", "--wminus", "1,2,1")
    _, b, _ = run(capsys, "report", "--type", "A2", "--wplus", "2,1,2", "--wminus", "1,2,1")
    assert a == b


def test_all_pairs_table(capsys):
    code, out, _ = run(capsys, "report", "--type", "A2", "--all-pairs", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "A2: 36 pairs"
    assert len(lines) == 38
    assert "mu_2 x mu_2" in lines[-1]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--type", "B2", "--word", "1,2,1,2", "--check", "ls-support")
    assert code == 0 and json.loads(out)["passed"]
    code, _, err = run(capsys, "verify", "--type", "A2", "--word", "1,1")
    assert code == 2 and "not a reduced word" in err


def test_verify_text_ledger(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "--check", "roots", "--check", "kappa", "--format", "text")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS roots[A2]")
    assert out.splitlines()[-1] == "overall: pass"


def test_ls_command(capsys):
    code, out, _ = run(capsys, "ls", "--type", "A2", "--word", "1,2,1", "--pair", "1,3", "--format", "text")
    assert code == 0
    assert out.strip() == "X1*X3 - q^-1*X3*X1 = (1)*X2"
    code, _, _ = run(capsys, "ls", "--type", "A2", "--word", "1,2,1", "--pair", "3,1")
    assert code == 2


def test_normal_command(capsys):
    code, out, _ = run(capsys, "normal", "--type", "A2", "--word", "1,2", "--degree", "a1")
    assert code == 0
    (deg,) = json.loads(out)["degrees"]
    assert deg["dimension"] == 1
    assert deg["lines"][0]["basis"] == [{"1,0": "1"}]


def test_center_command(capsys):
    code, out, _ = run(capsys, "center", "--type", "A2", "--word", "1,2", "--format", "text")
    assert code == 0 and out.strip() == "trivial up to height 6"


def test_usage_errors(capsys):
    assert run(capsys, "report", "--type", "A2")[0] == 2
    assert run(capsys, "report", "--type", "Q7", "--all-pairs")[0] == 2
    assert run(capsys, "normal", "--type", "A2", "--word", "1,2", "--degree", "a3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--type", "A2", "--check", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_degree_cap_too_small(capsys):
    code, _, err = run(capsys, "normal", "--type", "A2", "--word", "1,2,1", "--degree", "3,3", "--degree-cap", "3")
    assert code == 2 and "degree cap" in err


def test_parse_degree():
    a2 = cartan_datum("A2")
    assert parse_degree(a2, "a1+a2") == (1, 1)
    assert parse_degree(a2, "2a1 + a2 + a1") == (3, 1)
    assert parse_degree(a2, "0,2") == (0, 2)


def test_out_file_and_module_entry(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qschubert", "report", "--type", "A2", "--wplus", "1", "--wminus", "1", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == ""
    assert out.read_text() == (GOLDEN / "A2_s1_s1.json").read_text()
