import json
import subprocess
import sys

import pytest

from commlang.cli import main

PARITY_UNION = "a{0+2} <> b{0+2} | a{0+4} <> b{0+1}"
STAIRCASE = "b{2+2} | b{1} <> a{1+2}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_summary(capsys):
    code, out, _ = run(capsys, "eval", PARITY_UNION, "--alphabet", "ab")
    assert code == 0
    assert out.strip() == "sc=8 index=(0,0) period=(4,2) group=yes aperiodic=no alphabet={a,b}"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "a{3} <> b{0+1}", "--alphabet", "ab", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["grid"]["axes"] == [{"index": 4, "period": 1}, {"index": 0, "period": 1}]
    assert data["sc"] == 5 and data["aperiodic"] is True and data["alphabet"] == "ab"


def test_eval_dot(capsys):
    code, out, _ = run(capsys, "eval", STAIRCASE, "--alphabet", "ab", "--dot")
    assert code == 0 and out.startswith("digraph dfa {") and out.count("shape=doublecircle") == 2


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", f"up({STAIRCASE})", "b{2+1} | b{1+1} <> a{1+1}", "--alphabet", "ab")
    assert (code, out.strip()) == (0, "equivalent")
    code, out, _ = run(capsys, "equiv", "eps", "empty", "--alphabet", "ab")
    assert (code, out.strip()) == (1, "not equivalent")


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "eval", "a{0+2", "--alphabet", "ab")
    assert code == 2 and not out
    assert "expected '}'" in err and "^" in err


def test_usage_errors(capsys):
    assert run(capsys, "eval", "eps")[0] == 2
    assert run(capsys, "eval", "eps", "--alphabet", "aa")[0] == 2
    assert run(capsys, "fuzz", "--cases", "-1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_report_formats(capsys):
    code, out, _ = run(capsys, "report", "--suite", "aperiodic")
    assert code == 0 and out.startswith("| case | operation |")
    code, out, _ = run(capsys, "report", "--suite", "aperiodic", "--csv")
    assert code == 0 and out.splitlines()[0].startswith("case,operation")
    code, out, _ = run(capsys, "report", "--suite", "aperiodic", "--json")
    rows = json.loads(out)
    assert code == 0 and all(r["verdict"] != "violates" for r in rows)


def test_fuzz_small(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", "3", "--cases", "5", "--k", "2")
    assert code == 0 and "0 mismatches" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "commlang", "eval", "proj{a}(sigma*)", "--alphabet", "ab"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "sc=1 index=(0) period=(1) group=yes aperiodic=yes alphabet={a}"
