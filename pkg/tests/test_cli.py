import json
import subprocess
import sys

from tamecheck import corpus
from tamecheck.cli import EXIT_AUDIT, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from tamecheck.verdict import FAILS, HOLDS, Verdict


def test_examples_lists_the_corpus(capsys):
    assert main(["examples"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in corpus.names():
        assert name in out


def test_analyze_builtin_to_stdout_json(capsys):
    assert main(["analyze", "z_axis", "--json", "-"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdicts"]["tame"]["status"] == "FAILS"


def test_analyze_file_writes_text_and_json(tmp_path, capsys):
    src = tmp_path / "cusp.txt"
    src.write_text("vars = x y\nF = x^3 - y^2 + t*x^2\n")
    out = tmp_path / "cusp.json"
    code = main(["analyze", str(src), "--check", "jacobian", "--max-power", "4", "--json", str(out)])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "jacobian" in text and "timing" in text
    doc = json.loads(out.read_text())
    assert list(doc["verdicts"]) == ["jacobian"]
    assert doc["budgets"]["max_power"] == 4
    assert main(["verify", str(out)]) == EXIT_OK


def test_input_errors(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.txt")]) == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("vars = x\nF = x +\n")
    assert main(["analyze", str(bad)]) == EXIT_INPUT
    nonzero = tmp_path / "nonzero.txt"
    nonzero.write_text("vars = x\nF = x + 1\n")
    assert main(["analyze", str(nonzero)]) == EXIT_INPUT
    assert main(["analyze", "three_lines", "--max-power", "0"]) == EXIT_INPUT
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "tamecheck:" in err


def test_audit_violation_exit_code(monkeypatch, capsys):
    import tamecheck.report as rep

    monkeypatch.setattr(rep, "check_cond0", lambda loci, budget=None: Verdict(FAILS, {"kind": "note"}))
    monkeypatch.setattr(rep, "check_cond", lambda *a, **k: Verdict(HOLDS, {"kind": "trivial"}))
    assert main(["analyze", "three_lines", "--check", "cond"]) == EXIT_OK
    assert main(["analyze", "three_lines"]) == EXIT_AUDIT
    assert "VIOLATION" in capsys.readouterr().err


def test_verify_rejects_a_tampered_report(tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", "z_axis", "--json", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    doc["verdicts"]["tame"]["evidence"]["point"] = ["1", "0", "0", "0"]
    out.write_text(json.dumps(doc))
    assert main(["verify", str(out)]) == EXIT_VERIFY


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tamecheck", "examples"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "three_lines" in res.stdout
