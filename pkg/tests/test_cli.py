import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cflprg.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_gen_apply_and_invert():
    code, doc = run_json("gen", "apply", "0001001")
    assert code == 0 and doc["result"]["output"] == "10001001"
    assert doc["command"] == "gen apply"
    code, doc = run_json("gen", "invert", "1101")
    assert sorted(doc["result"]["preimages"]) == ["100", "101"]


def test_gen_range_rationals():
    code, doc = run_json("gen", "range", "--n", "7")
    assert doc["result"]["range_size"] == 120
    assert doc["result"]["tau"] == {"num": "1", "den": "16"}


def test_ip_and_gap():
    assert run_json("ip", "check", "1011")[1]["result"]["member"] is True
    assert run_json("ip", "dense", "--n", "8")[1]["result"]["dense"] == 120
    doc = run_json("gap", "--adversary", "all", "--n", "8")[1]
    assert doc["result"]["gap"] == {"num": "1", "den": "16"}


def test_fool_exact_and_sampled():
    doc = run_json("fool", "--adversary", str(DATA / "adversaries" / "ip.json"), "--n", "3")[1]
    assert doc["result"]["ell"] == {"num": "5", "den": "8"}
    doc = run_json("fool", "--adversary", "all", "--n", "40", "--samples", "200", "--seed", "7")[1]
    assert doc["result"]["mode"] == "sampled" and doc["result"]["radius"] > 0


def test_equiv():
    code, doc = run_json("equiv", "--adversary", "parity", "--n", "7")
    assert code == 0 and doc["result"]["identity_ok"] and doc["result"]["bound_ok"]


def test_disc_commands():
    a, b = str(DATA / "sets" / "full4.json"), str(DATA / "sets" / "full4.json")
    code, doc = run_json("disc", "rect", "--n", "2", "--a", a, "--b", b)
    assert code == 0 and doc["result"]["ok"]
    a6, b2 = str(DATA / "sets" / "full6.json"), str(DATA / "sets" / "full2.json")
    code, doc = run_json("disc", "t-set", "--case", "1", "--n", "2", "--j", "2", "--a", a6, "--b", b2)
    assert code == 0 and doc["result"]["t_size"] == 256


def test_swap_and_range_npda():
    code, doc = run_json("swap", "verify", "--machine", "dyck", "--n", "6")
    assert code == 0 and doc["result"]["swap_ok"] and doc["result"]["coverage_ok"]
    code, doc = run_json("swap", "build", "--machine", str(DATA / "machines" / "anbn.json"), "--n", "6")
    assert code == 0 and doc["result"]["family"]
    code, doc = run_json("range-npda", "--transducer", "append-zero", "--max-len", "6")
    assert code == 0 and doc["result"]["equal"]


def test_csv_output():
    code, text = run("--format", "csv", "ip", "dense", "--n", "4")
    assert code == 0 and text.splitlines()[0] == "key,value"
    assert "dense,6" in text.splitlines()


@pytest.mark.parametrize("argv, code", [
    (["gen", "apply", "012"], 2),
    (["gap", "--adversary", "no-such-thing", "--n", "4"], 2),
    (["equiv", "--adversary", "all", "--n", "5"], 2),
    (["gen", "range", "--n", "40"], 4),
])
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code
    assert "error" in capsys.readouterr().err


def test_violation_exit_code(tmp_path):
    # stack grows on every symbol, so no accepting path has a level segment and words go uncovered
    push = [{"state": "q1", "read": a, "pop": t, "push": ["X", t], "next": "q1"} for a in "01" for t in "zX"]
    spec = {"type": "npda", "name": "growing", "states": ["q0", "q1", "qf"], "start": "q0", "final": ["qf"],
            "transitions": [{"state": "q0", "read": "¢", "pop": "z", "push": ["z"], "next": "q1"},
                            {"state": "q1", "read": "$", "pop": "X", "push": ["X"], "next": "qf"}] + push}
    f = tmp_path / "growing.json"
    f.write_text(json.dumps(spec))
    code, text = run("swap", "verify", "--machine", str(f), "--n", "4")
    assert code == 3
    doc = json.loads(text)
    assert not doc["result"]["coverage_ok"] and doc["result"]["counterexamples"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cflprg", "ip", "check", "1011"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["member"] is True
