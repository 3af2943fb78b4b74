import io
import json
import subprocess
import sys

import pytest

from k3v import k3pipeline
from k3v.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

F = [1, -4, 2, 0, -3, 4, -5, 1, 1, -2, 2, -3, 2, -2, 1, 1, -5, 4, -3, 0, 2, -4, 1]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--json", *argv)
    return code, json.loads(text)


def checks(report):
    return {c["name"]: c for c in report["checks"]}


def test_epsilon():
    code, rep = run_json("epsilon", "6")
    assert code == EXIT_OK
    assert checks(rep)["epsilon"]["details"] == {"epsilon": 2, "symplectic_trace": 0}


def test_json_flag_anywhere_and_deterministic():
    a = run("epsilon", "5", "--json")[1]
    b = run("--json", "epsilon", "5")[1]
    assert a == b and json.loads(a)["command"] == "epsilon"


def test_quiet_drops_details():
    code, rep = run_json("--quiet", "picard-bound", "1:1,2:5,4:10,5:4")
    assert code == EXIT_OK and checks(rep)["picard_lower_bound"]["details"] is None
    code, rep = run_json("picard-bound", "1:1,2:5,4:10,5:4")
    assert checks(rep)["picard_lower_bound"]["details"]["bound"] == 19


@pytest.mark.parametrize("argv", [[], ["nosuch"], ["epsilon"], ["epsilon", "x"], ["lines", "--surface", "fermat3"],
                                  ["picard-bound", "1:1,2"], ["salem", "/nonexistent.json"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_lines_fermat():
    code, rep = run_json("lines", "--surface", "fermat3", "--field", "9")
    assert code == EXIT_OK and checks(rep)["lines"]["details"]["count"] == 112


def test_salem_and_charpoly(tmp_path):
    pf = tmp_path / "f.json"
    pf.write_text(json.dumps([str(c) for c in F]))
    code, rep = run_json("salem", str(pf))
    assert code == EXIT_OK
    assert checks(rep)["irreducible"]["details"]["certificate"] == "modular-degree-sets"
    pf.write_text(json.dumps(["1", "0", "1"]))
    assert run("salem", str(pf))[0] == EXIT_FAIL
    mf = tmp_path / "m.json"
    mf.write_text(json.dumps([["1", "2"], ["3", "1/2"]]))
    code, rep = run_json("charpoly", str(mf))
    assert checks(rep)["charpoly"]["details"] == ["-11/2", "-3/2", "1"]


def test_tate_and_fibers(tmp_path):
    mf = tmp_path / "x5.json"
    mf.write_text(json.dumps({"a4": "t^3", "a6": "t^7", "base": "Fp", "p": 5}))
    code, rep = run_json("fibers", str(mf))
    assert code == EXIT_OK
    dyn = {c["details"]["place"]: c["details"]["dynkin"] for c in rep["checks"] if c["name"].startswith("fiber")}
    assert dyn["t"] == "E7" and dyn["t + 2"] == "A4" and dyn["inf"] == "E8"
    code, rep = run_json("tate", str(mf), "--place", "inf")
    assert [c["details"]["kodaira"] for c in rep["checks"]] == ["II*"]


def test_torsion(tmp_path):
    mf = tmp_path / "e.json"
    mf.write_text(json.dumps({"a6": "1"}))
    code, rep = run_json("torsion", str(mf), "--point", "2,3")
    assert checks(rep)["torsion"]["details"] == {"torsion": True, "order": 6}
    assert run("torsion", str(mf), "--point", "1,1")[0] == EXIT_USAGE


def test_rdp_scan(tmp_path):
    sf = tmp_path / "s.json"
    sf.write_text(json.dumps({"p": 7, "kind": "double_cover", "vars": ["x", "y", "z"],
                              "f": "(x^3-x*z^2)^2+(y^3-y*z^2)^2"}))
    code, rep = run_json("rdp-scan", str(sf))
    assert code == EXIT_OK and checks(rep)["census"]["details"]["census"] == {"A1": 9}
    sf.write_text(json.dumps({"p": 5, "k": 2, "F": "x0^3*x1+x1^3*x2+x2^3*x3+x3^3*x0"}))
    code, rep = run_json("rdp-scan", str(sf))
    assert checks(rep)["census"]["details"]["census"] == {"A4": 4}
    sf.write_text(json.dumps({"p": 5, "kind": "cubic", "F": "x0"}))
    assert run("rdp-scan", str(sf))[0] == EXIT_USAGE


def test_rdp_identities():
    code, rep = run_json("rdp-identities")
    assert code == EXIT_OK
    st = {c["name"]: c["status"] for c in rep["checks"]}
    assert st["mutations_detected"] == "PASS" and st["symplectic_weight_audit"] == "PASS"


def test_order11():
    code, rep = run_json("order11", "0", "--norm", "inverse")
    assert code == EXIT_OK and checks(rep)["order11"]["details"]["agrees"] is False


def test_claim6_exit_code(monkeypatch):
    monkeypatch.delenv("K3V_LINE_TABLE", raising=False)
    code, rep = run_json("claim6")
    assert code == EXIT_FAIL
    assert [c["name"] for c in rep["checks"] if c["status"] == "FAIL"] == ["pi2_Y1_minus_Y2_is_FC"]
    monkeypatch.setenv("K3V_LINE_TABLE", str(k3pipeline.reconstructed_table_path()))
    code, rep = run_json("claim6")
    assert rep["inputs"]["line_table"].endswith("lines_reconstructed.tsv")
    assert "SKIP" not in {c["status"] for c in rep["checks"]}


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "k3v.cli", "epsilon", "4"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("PASS epsilon")
