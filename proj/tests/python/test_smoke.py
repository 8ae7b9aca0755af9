"""End-to-end smoke tests for the python bindings."""

import json
import os

import pytest

import swarmbmc

BENCH = os.path.join(os.path.dirname(__file__), "..", "..", "benchmarks")


def load(name):
    with open(os.path.join(BENCH, name)) as f:
        return swarmbmc.parse(f.read(), name)


def test_parse_features_validate():
    p = load("stack.imp")
    assert p.validate() == []
    assert p.features() == ["pop", "push", "top"]
    reparsed = swarmbmc.parse(p.pretty())
    assert reparsed.features() == p.features()


def test_parse_error():
    with pytest.raises(swarmbmc.ParseError):
        swarmbmc.parse("func main() { x = ; }")


def test_check_counterexample_and_replay():
    p = load("stack.imp")
    report = swarmbmc.check(p, depth=12, width=8, slicing=True)
    assert report["status"] == "counterexample"
    cex = report["counterexample"]
    assert cex["depth"] == 12
    assert swarmbmc.replay(p, json.dumps(cex), width=8)
    corrupted = dict(cex)
    corrupted["tape"] = [0] + cex["tape"][1:]
    assert not swarmbmc.replay(p, json.dumps(corrupted), width=8)


def test_check_omit_push_verifies():
    p = load("stack.imp")
    report = swarmbmc.check(p, depth=12, omit=["push"], slicing=True)
    assert report["status"] == "verified"
    with pytest.raises(swarmbmc.UnknownFeatureError):
        swarmbmc.check(p, omit=["nosuch"])


def test_swarm_statuses():
    p = load("stack.imp")
    report = swarmbmc.swarm(p, depth=12, slicing=True, jobs=2, keep_going=True)
    statuses = {"+".join(c["omitted"]) or "baseline": c["status"] for c in report["configs"]}
    assert statuses == {
        "baseline": "counterexample",
        "pop": "counterexample",
        "push": "verified",
        "top": "counterexample",
    }
    assert report["verdict"]["kind"] == "falsified"


def test_swarm_seeded_determinism():
    p = load("stack.imp")
    kwargs = dict(depth=4, strategy="half", configs=8, seed=42, jobs=1, keep_going=True)
    a = swarmbmc.swarm(p, **kwargs)
    b = swarmbmc.swarm(p, **kwargs)
    assert [c["omitted"] for c in a["configs"]] == [c["omitted"] for c in b["configs"]]


def test_enumerate_and_execute():
    src = """
int s;
int stack[2];
func top() { log("top"); return stack[s]; }
func push(int i) { log("push"); stack[s] = i; s = s + 1; }
func pop() { log("pop"); if (s > 0) { s = s - 1; } }
func main() {
  int v; int action; int i;
  for (i = 0; i < 3; i = i + 1) {
    action = havoc();
    assume(action >= 0 && action <= 2);
    if (action == 0) { v = top(); } else {
      if (action == 1) { v = havoc(); push(v); } else { pop(); } }
  }
}
"""
    p = swarmbmc.parse(src)
    verdict = swarmbmc.enumerate_tapes(p, depth=3, width=4, domains=[[0, 1, 2], [0]])
    assert verdict["fails"]
    outcome = swarmbmc.execute(p, verdict["tape"], width=4)
    assert outcome["kind"] == "assertion_violation"
    ok = swarmbmc.execute(p, [0, 0, 0], width=4)
    assert ok["kind"] == "completed"
    assert ok["log"] == ["top", "top", "top"]


def test_dimacs_roundtrip():
    assert swarmbmc.solve_dimacs("p cnf 1 1\n1 0\n")["status"] == "sat"
    assert swarmbmc.solve_dimacs("p cnf 1 2\n1 0\n-1 0\n")["status"] == "unsat"
    p = load("stack.imp")
    text = swarmbmc.encode_dimacs(p, depth=12, width=8, slicing=True)
    assert text.startswith("c ")
    assert swarmbmc.solve_dimacs(text)["status"] == "sat"


def test_cli_entry_point(capfd):
    code = swarmbmc.cli(["features", os.path.join(BENCH, "stack.imp")])
    out, _ = capfd.readouterr()
    assert code == 0
    assert out == "pop\npush\ntop\n"


def test_module_entry_point():
    import subprocess
    import sys

    env = dict(os.environ)
    r = subprocess.run(
        [sys.executable, "-m", "swarmbmc", "features", os.path.join(BENCH, "stack.imp")],
        capture_output=True,
        text=True,
        env=env,
    )
    assert r.returncode == 0
    assert r.stdout == "pop\npush\ntop\n"
