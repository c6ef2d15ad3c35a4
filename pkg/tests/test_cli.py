import json
import subprocess
import sys

import pytest

from hnnkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_canon(capsys):
    assert run(capsys, "canon", "-p", "preset:bs12", "taaT") == (0, '(0, "a", 0) exact level=0\n', "")


def test_endo(capsys):
    code, out, _ = run(capsys, "endo", "-p", "preset:grigorchuk", "-k", "2", "a")
    assert (code, out) == (0, "acacdaca\n")


def test_reduce(capsys):
    assert run(capsys, "reduce", "aA")[:2] == (0, "\n")
    code, out, _ = run(capsys, "reduce", "--format", "json", "[b^-1 a b, a]")
    assert json.loads(out) == {"word": "BabaBAbA", "length": 8}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "-p", "preset:bs12", "t")
    assert (code, out) == (0, "SpecialK0 (level=1, window=[0,0], coset=n/a)\n")


def test_equal_exit_codes(capsys):
    assert run(capsys, "equal", "-p", "preset:bs12", "taaT", "a")[:2] == (0, "True\n")
    assert run(capsys, "equal", "-p", "preset:grigorchuk", "taT", "a")[:2] == (3, "Unknown\n")


def test_input_errors(capsys):
    code, _, err = run(capsys, "canon", "-p", "preset:bs12", "tb")
    assert code == 2 and "unknown generator" in err
    assert run(capsys, "canon", "-p", "preset:nope", "a")[0] == 2
    assert run(capsys, "canon", "a")[0] == 2
    assert run(capsys, "canon", "-p", "/no/such/file.json", "a")[0] == 2


def test_depth_report(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, _, _ = run(capsys, "depth", "-p", "preset:bs23", "[b^-1 a b, a]", "-n", "1", "-o", str(out))
    report = json.loads(out.read_text())
    assert code == 0 and report["status"] == "accepted" and report["certificate_ok"] is True
    assert run(capsys, "depth", "-p", "preset:bs23", "BaabAAA", "-n", "1")[0] == 1


def test_depth_report_is_deterministic(capsys):
    a = run(capsys, "depth", "-p", "preset:bs23", "[b^-2 a b^2, a]", "-n", "2")[1]
    b = run(capsys, "depth", "-p", "preset:bs23", "[b^-2 a b^2, a]", "-n", "2")[1]
    assert a == b and json.loads(a)["status"] == "accepted"


def test_push_then_verify(capsys, tmp_path):
    cert = tmp_path / "push.json"
    code, out, _ = run(capsys, "homotopy", "push", "a", "-p", "preset:bs12", "--rows", "4", "-o", str(cert))
    assert code == 0 and "[1, 2, 4, 8]" in out
    assert run(capsys, "homotopy", "verify", str(cert))[0] == 0
    doc = json.loads(cert.read_text())
    doc["homotopy"]["labels"][2] = "aaa"
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "homotopy", "verify", str(cert))
    assert code == 1 and out.startswith("FAILED")


def test_fp_then_verify(capsys, tmp_path):
    cert = tmp_path / "fp.json"
    code, _, _ = run(capsys, "homotopy", "fp", "BaabAAA", "-p", "preset:bs23", "-N", "0", "-M", "1",
                     "--at", "TT", "-o", str(cert))
    assert code == 0
    code, out, _ = run(capsys, "homotopy", "verify", str(cert))
    assert code == 0 and out.startswith("ok: replay ok")


def test_trivialize_unknown(capsys):
    code, out, _ = run(capsys, "homotopy", "trivialize", "[b^-1 a b, a]", "-p", "preset:bs23", "--cap", "0",
                       "--budget-nodes", "300")
    assert code == 3 and out.startswith("Unknown")


def test_ball_outputs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "ball", "-p", "preset:bs12", "--radius", "2", "--label", "0,0", "-o", str(a))
    run(capsys, "ball", "-p", "preset:bs12", "--radius", "2", "--label", "0,0", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert {v["region"] for v in json.loads(a.read_text())["vertices"]} == {"InD", "SpecialK0", "OtherComponent"}
    code, out, _ = run(capsys, "ball", "-p", "preset:bs12", "--radius", "0", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    assert run(capsys, "ball", "-p", "preset:bs23", "--radius", "1")[0] == 2


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--name", "bs:2,3", "BabaBAbA")
    assert code == 0 and out.startswith("Nontrivial")
    code, out, _ = run(capsys, "oracle", "-p", "preset:grigorchuk", "--format", "json", "(adacac)^4")
    assert json.loads(out)["value"] == "Trivial"


def test_presentation_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"generators": ["a"], "phi": {"a": "aaa"}, "relators": [],
                                "base_oracle": "free", "depth_bound": 0}))
    assert run(capsys, "canon", "-p", str(path), "Tat")[:2] == (0, '(0, "aaa", 0) exact level=0\n')
    path.write_text("{not json")
    assert run(capsys, "canon", "-p", str(path), "a")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hnnkit", "canon", "-p", "preset:bs12", "TTa"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == '(0, "aaaa", 2) exact level=-2\n'


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
