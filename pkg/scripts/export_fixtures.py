"""Write the fixture adversaries, machines and transducers under data/ as JSON."""
import json
from pathlib import Path

from cflprg.discrepancy import full_set, words_to_hex
from cflprg.npda_swap import FIXTURE_MACHINES, FIXTURE_TRANSDUCERS, npda_to_dict

ROOT = Path(__file__).resolve().parent.parent / "data"

ADVERSARIES = {
    "all.json": {"type": "dfa", "name": "all", "states": ["q"], "start": "q", "accepting": ["q"],
                 "transitions": {"q": {"0": "q", "1": "q"}}},
    "empty.json": {"type": "dfa", "name": "empty", "states": ["q"], "start": "q", "accepting": [],
                   "transitions": {"q": {"0": "q", "1": "q"}}},
    "parity.json": {"type": "dfa", "name": "parity", "states": ["even", "odd"], "start": "even",
                    "accepting": ["odd"],
                    "transitions": {"even": {"0": "even", "1": "odd"}, "odd": {"0": "odd", "1": "even"}}},
    "dyck.json": {"type": "cnf", "name": "dyck", "start": "S", "accepts_empty": True,
                  "rules": [["S", "S", "S"], ["S", "L", "R"], ["S", "L", "X"], ["X", "S", "R"],
                            ["L", "0"], ["R", "1"]]},
    "ip.json": {"type": "builtin", "name": "ip"},
    "advised-equals.json": {
        "type": "advised", "name": "advised-equals",
        "base": {"type": "dfa", "name": "equal-tracks", "alphabet": ["0|0", "0|1", "1|0", "1|1"],
                 "states": ["ok", "bad"], "start": "ok", "accepting": ["ok"],
                 "transitions": {"ok": {"0|0": "ok", "1|1": "ok", "0|1": "bad", "1|0": "bad"},
                                 "bad": {"0|0": "bad", "1|1": "bad", "0|1": "bad", "1|0": "bad"}}},
        "advice": {str(n): ("01" * n)[:n] for n in range(0, 21)},
    },
}


def main():
    for sub in ("adversaries", "machines", "transducers", "sets"):
        (ROOT / sub).mkdir(parents=True, exist_ok=True)
    for name, spec in ADVERSARIES.items():
        (ROOT / "adversaries" / name).write_text(json.dumps(spec, indent=2) + "\n")
    for name, make in FIXTURE_MACHINES.items():
        (ROOT / "machines" / f"{name}.json").write_text(json.dumps(npda_to_dict(make()), indent=2) + "\n")
    for name, make in FIXTURE_TRANSDUCERS.items():
        (ROOT / "transducers" / f"{name}.json").write_text(json.dumps(npda_to_dict(make()), indent=2) + "\n")
    for length in (2, 4, 6):
        (ROOT / "sets" / f"full{length}.json").write_text(json.dumps(words_to_hex(full_set(length), length)) + "\n")


if __name__ == "__main__":
    main()
