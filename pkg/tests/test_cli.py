import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from idealforge import cli
from idealforge.errors import InvariantViolation
from idealforge.thmcheck import recheck_certificate


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    return code, json.loads(out), err


SUCCESS = [
    ("split", "--poly", "x^4+x^3+x^2+x+1", "--q", "11"),
    ("split", "--p", "5", "--q", "19"),
    ("split", "--p", "5", "--q", "5"),
    ("divides", "--poly", "x^2+1", "--q", "5", "--a", "2", "--element", "3-4*x"),
    ("divides", "--p", "5", "--q", "19", "--phi", "x^2-4*x+1", "--element", "19"),
    ("member", "--p", "3", "--q", "7", "--a", "2", "--s", "2", "--element", "[3,-5]"),
    ("member", "--p", "5", "--q", "5", "--s", "4", "--element", "5"),
    ("valuation", "--p", "3", "--q", "7", "--a", "2", "--element", "49"),
    ("thm2-check", "--p", "3", "--q", "7", "--a", "2", "--s", "2", "--element", "[3,-5]"),
    ("thm2-check", "--poly", "x^2+1", "--q", "5", "--a", "2", "--s", "1", "--element", "3-4*x"),
    ("thm2-search", "--p", "3", "--q", "7", "--a", "2", "--s", "2", "--trials", "50", "--seed", "1"),
    ("cyclo-norms", "--p", "5", "--x", "1", "--y", "-1", "--q", "11"),
    ("cyclo-norms", "--p", "3"),
    ("ramify", "--p", "7"),
    ("lemma-trace", "--p", "3", "--q", "7", "--x", "1", "--y", "2", "--z", "14"),
    ("lemma-trace", "--p", "3", "--q", "3", "--x", "1", "--y", "2", "--z", "3", "--assume-p-less-z"),
    ("roots-count", "--p", "3", "--q", "7"),
]


@pytest.mark.parametrize("argv", SUCCESS, ids=lambda a: " ".join(a[:3]))
def test_success_documents_validate(argv, schema):
    code, doc, err = call_json(*argv)
    assert code == 0 and err == ""
    assert doc["kind"] == argv[0]
    jsonschema.validate(doc, schema)


@pytest.mark.parametrize("argv", SUCCESS, ids=lambda a: " ".join(a[:3]))
def test_text_mode_is_line_oriented(argv):
    code, out, _ = call(*argv, "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'schema_version="1"'
    assert lines[1] == f'kind="{argv[0]}"'
    assert all("=" in line for line in lines)


def test_split_example():
    code, doc, _ = call_json("split", "--poly", "x^4+x^3+x^2+x+1", "--q", "11")
    assert code == 0
    assert [p["root"] for p in doc["primes"]] == [3, 4, 5, 9]
    assert all(p["f"] == 1 and p["e"] == 1 for p in doc["primes"])


def test_search_example_certificates_recheck():
    code, doc, _ = call_json("thm2-search", "--p", "3", "--q", "7", "--a", "2", "--s", "2",
                             "--trials", "100", "--seed", "1")
    assert code == 0
    assert doc["certificates"]
    assert all(recheck_certificate(c) for c in doc["certificates"])


def test_search_defaults_to_smallest_linear_root():
    code, doc, _ = call_json("thm2-search", "--p", "3", "--q", "7", "--s", "2", "--trials", "100", "--seed", "1")
    assert code == 0 and doc["prime"]["root"] == 2 and doc["certificates"]
    code, doc, err = call_json("thm2-search", "--p", "3", "--q", "5", "--s", "2", "--trials", "3")
    assert code == 1 and doc["kind"] == "error" and "degree-1" in err


def test_member_requires_choice_when_several_primes():
    code, _, err = call("member", "--p", "3", "--q", "7", "--s", "2", "--element", "1")
    assert code == 1 and "--a" in err


ERRORS = [
    ("split", "--poly", "x^2", "--q", "7"),
    ("split", "--poly", "x^2+1", "--p", "3", "--q", "7"),
    ("split", "--q", "7"),
    ("split", "--poly", "2*x^2+1", "--q", "7"),
    ("split", "--poly", "x^^2", "--q", "7"),
    ("split", "--p", "3", "--q", "8"),
    ("member", "--p", "3", "--q", "7", "--a", "3", "--s", "2", "--element", "1"),
    ("thm2-search", "--p", "3", "--q", "7", "--a", "2", "--s", "1"),
    ("thm2-check", "--p", "5", "--q", "19", "--phi", "x^2-4*x+1", "--s", "2", "--element", "1"),
    ("valuation", "--p", "3", "--q", "7", "--a", "2", "--element", "0"),
    ("ramify", "--p", "4"),
    ("roots-count", "--p", "5", "--q", "5"),
    ("cyclo-norms", "--p", "5", "--x", "0", "--y", "0"),
    ("nonsense",),
    (),
]


@pytest.mark.parametrize("argv", ERRORS, ids=lambda a: " ".join(a[:3]) or "empty")
def test_errors_exit_one_with_diagnostic(argv, schema):
    code, out, err = call(*argv)
    assert code == 1
    assert err.startswith("idealforge: ")
    doc = json.loads(out)
    assert doc["kind"] == "error" and doc["exit_status"] == 1
    jsonschema.validate(doc, schema)


def test_text_mode_errors_write_nothing_to_stdout():
    code, out, err = call("split", "--poly", "x^2", "--q", "7", "--format", "text")
    assert code == 1 and out == "" and "DegenerateField" in err


def test_invariant_violation_exits_two(monkeypatch, schema):
    def broken(args):
        raise InvariantViolation("forced")
    monkeypatch.setitem(cli.COMMANDS, "ramify", broken)
    code, doc, err = call_json("ramify", "--p", "3")
    assert code == 2 and doc["exit_status"] == 2
    assert "forced" in err
    jsonschema.validate(doc, schema)


def test_seed_env_default(monkeypatch):
    argv = ("thm2-search", "--p", "3", "--q", "7", "--a", "2", "--s", "2", "--trials", "20")
    monkeypatch.setenv("IDEALFORGE_SEED", "5")
    _, from_env, _ = call(*argv)
    monkeypatch.delenv("IDEALFORGE_SEED")
    _, explicit, _ = call(*argv, "--seed", "5")
    _, default, _ = call(*argv)
    assert from_env == explicit
    assert json.loads(default)["seed"] == 0


def test_workers_do_not_change_output():
    argv = ("thm2-search", "--p", "3", "--q", "7", "--a", "2", "--s", "2", "--trials", "40", "--seed", "3")
    assert call(*argv)[1] == call(*argv, "--workers", "2")[1]


def test_repeat_runs_are_byte_identical():
    for argv in SUCCESS:
        assert call(*argv)[1] == call(*argv)[1]


@pytest.mark.parametrize("hashseed", ["0", "12345"])
def test_subprocess_output_independent_of_hash_seed(hashseed):
    argv = ["thm2-search", "--p", "5", "--q", "11", "--a", "3", "--s", "2", "--trials", "30", "--seed", "7"]
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    env.pop("IDEALFORGE_SEED", None)
    proc = subprocess.run([sys.executable, "-m", "idealforge", *argv], capture_output=True, env=env, check=True)
    assert proc.stdout.decode() == call(*argv)[1]
