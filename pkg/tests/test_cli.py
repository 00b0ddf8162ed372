import io
import json
import re
import subprocess
import sys
from pathlib import Path

from helpers import ring

from qsing.cli import run_cli
from qsing.parse import parse_poly

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"
FIVE = ["--p", "3", "--vars", "x1..x5", "--gen", "x1*x2*x3*x4*x5"]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_qexpand():
    code, out, _ = cli("qexpand", "--p", "3", "--vars", "x1,x2", "--gen", "x1^4*x2 + 2*x1^3 + x2^2")
    assert code == 0
    assert "bucket 1,1: x1" in out and "bucket 0,0: 2*x1" in out
    assert "f+ = x1^4*x2 + x2^2" in out and "q-th power: no" in out


def test_eta_and_qorder():
    assert cli("eta", *FIVE, "--at", "origin")[1] == "5\n"
    code, out, _ = cli("eta", *FIVE)
    assert code == 0 and out == "max over candidates = 5, attained along: origin\n"
    code, out, _ = cli("qorder", "--p", "3", "--vars", "x1,x2", "--gen", "x1^3*x2",
                       "--at", "point:0,2", "--at", "generic:x1")
    assert out == "point:0,2: 4\ngeneric:x1: 3\n"


def test_diff_variants():
    assert cli("diff", *FIVE, "--i", "2")[1].count("*") == 20
    code, out, _ = cli("diff", "--p", "3", "--vars", "x1,x2", "--gen", "x1^2*x2", "--i", "1",
                       "--ideal")
    assert out == "<x1*x2, x1^2>\n"
    code, out, _ = cli("diff", "--p", "3", "--vars", "x1..x5", "--gen", "x1^2*x2*x4*x5",
                       "--i", "2", "--lambda", "x1,x2,x3", "--L", "x1*x2*x3")
    assert code == 0 and out == "<x1^2*x2>\n"
    assert cli("diff", *FIVE, "--i", "3")[0] == 1
    assert cli("diff", *FIVE, "--i", "1", "--ideal", "--lambda", "x1")[0] == 2


def test_sing_and_permissible():
    assert cli("sing", *FIVE, "--a", "1", "--at", "origin")[1] == "yes\n"
    assert cli("sing", *FIVE, "--a", "2", "--at", "origin")[1] == "no\n"
    assert cli("sing", *FIVE, "--a", "1")[0] == 2
    base = ["--p", "3", "--vars", "x1,x2", "--gen", "x1^6*x2", "--center", "x1"]
    assert cli("permissible", *base, "--a", "2")[1] == "yes\n"
    assert cli("permissible", *base, "--max")[1] == "2\n"


def test_blowup():
    code, out, _ = cli("blowup", "--p", "3", "--vars", "x1,x2", "--gen",
                       "x1*x2*(x2 - 2*x1 + x1^3)", "--center", "x1,x2", "--a", "1")
    assert code == 0
    assert "blowup along V(x1,x2), x1-chart:" in out and "blowup along V(x1,x2), x2-chart:" in out
    R = ring(3, "x1,x2")
    one = re.findall(r"1-transform: <(.*)>", out)
    assert parse_poly(one[0].replace("'", ""), R) == parse_poly("x2*(x2 - 2 + x1^2)", R)
    code, out, err = cli("blowup", "--p", "3", "--vars", "x1,x2", "--gen", "x1*x2",
                         "--center", "x1,x2", "--chart", "x1", "--a", "1")
    assert code == 1 and "total transform" in out and err.startswith("error[domain]")


def test_errors_and_exit_codes():
    code, _, err = cli("eta", "--p", "3", "--vars", "x1", "--gen", "x1 +", "--at", "origin")
    assert code == 2 and err.startswith("error[parse]: line 1, column 5")
    assert cli("eta", "--vars", "x1", "--gen", "x1")[0] == 2
    assert cli("eta", "--p", "4", "--vars", "x1", "--gen", "x1")[0] == 1
    assert cli("nonsense")[0] == 2


def test_run_matches_golden_text_and_json():
    job = str(ROOT / "jobs" / "five_var.job")
    code, out, _ = cli("run", job)
    assert code == 0 and out == (GOLDEN / "five_var.txt").read_text()
    code, out, _ = cli("run", job, "--format", "json")
    assert json.loads(out) == json.loads((GOLDEN / "five_var.json").read_text())
    assert cli("run", job, "--format", "json")[1] == out
    code, out, _ = cli("run", str(ROOT / "jobs" / "intro_reduction.job"))
    assert out == (GOLDEN / "intro_reduction.txt").read_text()


def test_verbosity_levels(monkeypatch):
    job = str(ROOT / "jobs" / "five_var.job")
    brief = cli("run", job, "--verbosity", "brief")[1]
    full = cli("run", job, "--verbosity", "full")[1]
    normal = cli("run", job)[1]
    assert len(brief) < len(normal) < len(full)
    monkeypatch.setenv("QSING_VERBOSITY", "full")
    assert cli("run", job)[1] == full


def test_rendered_ideals_reparse():
    _, out, _ = cli("run", str(ROOT / "jobs" / "five_var.job"))
    R = ring(3, "x1,x2,x3,x4,x5")
    for body in re.findall(r"= <([^>]*)>", out):
        for gen in body.split(", "):
            if gen != "0":
                parse_poly(gen, R)


def test_verify_small_scale():
    code, out, _ = cli("verify", "--scale", "0.05", "--suite", "sandwich", "--suite", "jacobian")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and all(line.startswith("PASS") for line in lines)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qsing", "eta", *FIVE, "--at", "origin"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "5\n"
