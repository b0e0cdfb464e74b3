import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lpsoliton.cli import render_table, run_command
from lpsoliton.specfile import emit_example

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_builtin():
    code, out, _ = call("verify", "builtin")
    assert code == 0
    env = json.loads(out)
    assert list(env) == ["command", "input", "parameters", "passed", "result", "reports"]
    assert env["passed"] is True
    assert [r["subject"] for r in env["reports"]] == [
        "manifold", "almost_paracontact", "levi_civita", "lp_sasakian", "lp_identities"]


def test_scalar_golden():
    # r' = 6(1 + a)(2 + a) = 36 at (1, 1)
    code, out, _ = call("scalar", "builtin", "--a", "1", "--b", "1")
    assert code == 0
    assert out == (GOLDEN / "scalar_builtin_a1_b1.json").read_text(encoding="utf-8")


def test_soliton_command():
    code, out, _ = call("soliton", "builtin", "--x", "xi", "--a", "1", "--b", "0")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["dimension"] == 3 and len(res["basis"]) == 3
    assert res["delta_coefficients"] == ["-4", "2", "-1"]
    assert res["epsilon_coefficients"] == ["-10", "2", "0"]


def test_soliton_explicit_vector():
    code, out, _ = call("soliton", "builtin", "--x", "1, 0, 0, 1/2", "--preset", "zamkovoy")
    assert code == 0
    env = json.loads(out)
    assert env["parameters"]["x"] == ["1", "0", "0", "1/2"]
    assert env["parameters"]["preset"] == "Zamkovoy"


def test_connection_preset():
    code, out, _ = call("connection", "builtin", "--preset", "schouten-van-kampen")
    env = json.loads(out)
    assert code == 0
    assert env["result"]["metric_compatible"] is True
    assert env["result"]["torsion_free"] is False
    assert env["result"]["connection"] == {"kind": "Preset", "a": "1", "b": "0",
                                           "name": "SchoutenVanKampen"}


@pytest.mark.parametrize("cmd", ["curvature", "ricci", "scalar", "connection", "theorems"])
def test_parameter_commands_exit_zero(cmd):
    code, out, _ = call(cmd, "builtin", "--a", "1/2", "--b", "-2")
    assert code == 0
    assert json.loads(out)["passed"]


def test_format_position_and_table():
    a = call("--format", "table", "ricci", "builtin", "--a", "1")
    b = call("ricci", "builtin", "--a", "1", "--format", "table")
    assert a == b and a[0] == 0
    assert "== ricci" in a[1] and "\x1b[" not in a[1]


def test_table_color_respects_no_color(monkeypatch):
    env = json.loads(call("scalar", "builtin")[1])
    assert "\x1b[32m" in render_table(env, color=True)
    assert "\x1b[" not in render_table(env, color=False)

    class Tty(io.StringIO):
        def isatty(self):
            return True

    from lpsoliton import cli
    monkeypatch.setenv("NO_COLOR", "1")
    assert not cli._use_color(Tty())
    monkeypatch.delenv("NO_COLOR")
    assert cli._use_color(Tty())


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["verify"],
    ["connection", "builtin", "--a", "x"],
    ["connection", "builtin", "--a", "1", "--preset", "zamkovoy"],
    ["connection", "builtin", "--preset", "levi-civita"],
    ["soliton", "builtin"],
    ["soliton", "builtin", "--x", "1,2"],
    ["crosscheck", "builtin", "--grid", "0"],
    ["verify", "builtin", "--format", "xml"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""


def test_io_and_parse_errors(tmp_path):
    assert call("verify", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json", encoding="utf-8")
    code, _, err = call("verify", str(bad))
    assert code == 3 and "line 1" in err
    doc = json.loads(emit_example())
    doc["brackets"].append({"i": 4, "j": 1, "k": 1, "value": "-1"})  # breaks antisymmetry
    bad.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = call("verify", str(bad))
    assert code == 3 and "brackets_antisymmetric" in err


def test_math_failure_exit_one(tmp_path):
    # valid frame data, but the structure is not LP-Sasakian
    doc = json.loads(emit_example())
    doc["brackets"] = []
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = call("verify", str(path))
    assert code == 1
    env = json.loads(out)
    failed = [c["name"] for r in env["reports"] for c in r["checks"] if c["status"] == "fail"]
    assert "nabla_xi" in failed
    assert call("soliton", str(path), "--x", "xi")[0] == 1


def test_example_command_out(tmp_path):
    out = tmp_path / "ex.json"
    assert call("paper-example", "--out", str(out)) == (0, "", "")
    assert out.read_text(encoding="utf-8") == emit_example() == call("paper-example")[1]
    assert call("verify", str(out))[0] == 0
    assert call("paper-example", "--out", str(tmp_path / "no" / "dir.json"))[0] == 3


def test_audit_example_command():
    code, out, _ = call("audit-example", "--grid", "2")
    assert code == 0
    env = json.loads(out)
    assert env["passed"] is True
    assert env["reports"][0]["checks"][0]["name"] == "general_connection_table"


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "lpsoliton.cli", "verify", "builtin"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == call("verify", "builtin")[1]
