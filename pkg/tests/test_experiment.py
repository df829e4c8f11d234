import json
from pathlib import Path

import pytest

from rainbow_cycles.experiment import SpecParseError, parse_int_list, parse_spec, run_experiment, run_stanzas

SMOKE = Path(__file__).resolve().parent.parent / "experiments" / "smoke.txt"


def test_parse_int_list():
    assert parse_int_list("0..3,7") == [0, 1, 2, 3, 7]
    assert parse_int_list(" 5 ") == [5]


def test_grow_on_ten_cayley_graphs():
    spec = "[g]\ngenerator = cayley\nmod = 8\nset = 0..7\nalgorithm = grow\nk = 2\nseeds = 0..9\nexpect = verified\n"
    report = run_stanzas(parse_spec(spec))
    assert len(report["items"][0]["records"]) == 10
    assert report["summary"]["ok"]


def test_oracle_batch_has_no_mismatches():
    spec = "[o]\ngenerator = random\nn = 3..10\nm = 0..20\nalgorithm = oracle\nseeds = 0..199\nexpect = agree\n"
    item = run_stanzas(parse_spec(spec))["items"][0]
    assert len(item["records"]) == 200 and item["mismatches"] == 0


@pytest.mark.parametrize(
    "text,line",
    [
        ("[a]\ngenerator = nope\nalgorithm = shortest\n", 2),
        ("[a]\ngenerator = hypercube\nd = 3\nalgorithm = fly\n", 4),
        ("generator = hypercube\n", 1),
        ("[a]\ngenerator = hypercube\nd = 3\nalgorithm = acyclic\nbogus = 1\n", 5),
        ("[a]\ngenerator = hypercube\nd = x\nalgorithm = acyclic\n", 3),
        ("[a]\ngenerator = hypercube\nalgorithm = acyclic\n", 1),
        ("[a]\ngenerator = hypercube\nd = 3\nalgorithm = bk\nk = 2\n", 4),
        ("[a]\ngenerator = hypercube\nd = 3\nd = 4\n", 4),
        ("[a\n", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(SpecParseError) as exc:
        parse_spec(text)
    assert exc.value.line == line


def test_smoke_file_is_deterministic():
    a = run_experiment(SMOKE)
    b = run_experiment(SMOKE)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["summary"]["ok"]


def test_file_generator_relative_path(tmp_path):
    (tmp_path / "tri.txt").write_text("3 3\n0 1 0\n1 2 1\n0 2 2\n")
    (tmp_path / "spec.txt").write_text("[t]\ngenerator = file\npath = tri.txt\nalgorithm = shortest\nexpect = found, verified\n")
    report = run_experiment(tmp_path / "spec.txt")
    rec = report["items"][0]["records"][0]
    assert rec["certificate"]["length"] == 3 and rec["verified"]


def test_failed_expectation_is_counted():
    spec = "[q]\ngenerator = hypercube\nd = 3\nalgorithm = acyclic\nexpect = found\n"
    report = run_stanzas(parse_spec(spec))
    assert report["summary"]["failures"] == 1 and not report["summary"]["ok"]


def test_node_limit_gives_unknown():
    spec = "[u]\ngenerator = hypercube\nd = 6\nalgorithm = shortest\nnode_limit = 20\n"
    rec = run_stanzas(parse_spec(spec))["items"][0]["records"][0]
    assert rec["status"] == "unknown"
