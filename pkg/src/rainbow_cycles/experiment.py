"""Batch experiments declared in a small line-oriented text format.

A spec file is a sequence of stanzas.  Each stanza opens with a
``[name]`` header followed by ``key = value`` lines; ``#`` starts a
comment.  Example::

    [cayley-grow]
    generator = cayley
    mod = 8
    set = 0..7
    algorithm = grow
    k = 2
    budget = 4
    seeds = 0..9
    expect = verified

Generators: ``hypercube`` (d), ``cayley`` (mod, set), ``random`` (n, m;
either may be a range ``lo..hi`` drawn per seed), ``file`` (path).
Algorithms: ``shortest`` (max_len, node_limit), ``exact`` (k),
``acyclic``, ``grow`` (k, epsilon, budget, retries, roots), ``oracle``
(max_len; compares exact search with brute force), ``bk`` (k; cayley
only, compares the B_k* test with exact C_2k search).
Expectations: ``verified``, ``found``, ``none``, ``agree``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .colored_graph import ColoredGraph, verify_certificate
from .detect import (
    BudgetExceeded,
    SearchBudget,
    brute_force_enumerate,
    has_rainbow_c2k,
    is_rainbow_acyclic,
    shortest_rainbow_cycle,
)
from .edgelist import read_edge_list
from .generators import bk_witness, gen_cayley_bk, gen_hypercube, gen_random_proper
from .level_tree import EmptyAfterPeeling, ExpansionParams, grow_tree

GENERATOR_KEYS = {
    "hypercube": {"d"},
    "cayley": {"mod", "set"},
    "random": {"n", "m"},
    "file": {"path"},
}
ALGORITHM_KEYS = {
    "shortest": {"max_len", "node_limit"},
    "exact": {"k", "node_limit"},
    "acyclic": set(),
    "grow": {"k", "epsilon", "budget", "retries", "roots"},
    "oracle": {"max_len"},
    "bk": {"k"},
}
REQUIRED = {"hypercube": {"d"}, "cayley": {"mod", "set"}, "random": {"n", "m"}, "file": {"path"}}
EXPECTATIONS = {"verified", "found", "none", "agree"}
COMMON_KEYS = {"generator", "algorithm", "seeds", "expect"}


class SpecParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Stanza:
    name: str
    line: int
    values: dict[str, str] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)


def parse_int_list(text: str) -> list[int]:
    """``"0..3,7"`` -> [0, 1, 2, 3, 7]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _int_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    return int(text), int(text)


def parse_spec(text: str) -> list[Stanza]:
    stanzas: list[Stanza] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise SpecParseError(f"malformed header {line!r}", lineno)
            stanzas.append(Stanza(line[1:-1].strip(), lineno))
            continue
        if "=" not in line:
            raise SpecParseError(f"expected 'key = value', got {line!r}", lineno)
        if not stanzas:
            raise SpecParseError("key outside a [stanza]", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        st = stanzas[-1]
        if key in st.values:
            raise SpecParseError(f"duplicate key {key!r}", lineno)
        st.values[key] = value
        st.lines[key] = lineno
    for st in stanzas:
        _validate(st)
    return stanzas


def _validate(st: Stanza) -> None:
    where = lambda key: st.lines.get(key, st.line)  # noqa: E731
    gen = st.values.get("generator")
    alg = st.values.get("algorithm")
    if gen is None:
        raise SpecParseError(f"stanza [{st.name}] has no generator", st.line)
    if gen not in GENERATOR_KEYS:
        raise SpecParseError(f"unknown generator {gen!r}", where("generator"))
    if alg is None:
        raise SpecParseError(f"stanza [{st.name}] has no algorithm", st.line)
    if alg not in ALGORITHM_KEYS:
        raise SpecParseError(f"unknown algorithm {alg!r}", where("algorithm"))
    if alg == "bk" and gen != "cayley":
        raise SpecParseError("algorithm 'bk' needs generator 'cayley'", where("algorithm"))
    allowed = COMMON_KEYS | GENERATOR_KEYS[gen] | ALGORITHM_KEYS[alg]
    for key in st.values:
        if key not in allowed:
            raise SpecParseError(f"unknown key {key!r} for {gen}/{alg}", where(key))
    for key in REQUIRED[gen]:
        if key not in st.values:
            raise SpecParseError(f"generator {gen!r} needs {key!r}", st.line)
    if alg in ("exact", "bk") and "k" not in st.values:
        raise SpecParseError(f"algorithm {alg!r} needs 'k'", st.line)
    for e in st.values.get("expect", "").split(","):
        if e.strip() and e.strip() not in EXPECTATIONS:
            raise SpecParseError(f"unknown expectation {e.strip()!r}", where("expect"))
    for key, value in st.values.items():
        if key in ("generator", "algorithm", "expect", "path"):
            continue
        try:
            if key == "epsilon":
                float(value)
            elif key in ("seeds", "set"):
                parse_int_list(value)
            else:
                _int_range(value)
        except ValueError:
            raise SpecParseError(f"bad value {value!r} for {key!r}", where(key)) from None


def _generate(st: Stanza, seed: int, base: Path | None) -> ColoredGraph:
    v = st.values
    gen = v["generator"]
    if gen == "hypercube":
        return gen_hypercube(int(v["d"]))
    if gen == "cayley":
        return gen_cayley_bk(int(v["mod"]), parse_int_list(v["set"]))
    if gen == "file":
        path = Path(v["path"])
        if base is not None and not path.is_absolute():
            path = base / path
        return read_edge_list(path)
    rng = random.Random(seed)
    n = rng.randint(*_int_range(v["n"]))
    lo, hi = _int_range(v["m"])
    m = rng.randint(min(lo, n * (n - 1) // 2), min(hi, n * (n - 1) // 2))
    return gen_random_proper(n, m, seed)


def _run_one(st: Stanza, seed: int, base: Path | None) -> dict:
    v = st.values
    alg = v["algorithm"]
    g = _generate(st, seed, base)
    rec: dict = {"seed": seed, "n": g.n, "m": g.m}
    cert = None
    try:
        if alg == "shortest":
            budget = SearchBudget(int(v.get("max_len", max(3, g.n))), int(v["node_limit"]) if "node_limit" in v else None)
            cert = shortest_rainbow_cycle(g, budget)
        elif alg == "exact":
            budget = SearchBudget(3, int(v["node_limit"])) if "node_limit" in v else None
            cert = has_rainbow_c2k(g, int(v["k"]), budget)
        elif alg == "acyclic":
            rec["acyclic"] = is_rainbow_acyclic(g)
            rec["status"] = "none" if rec["acyclic"] else "found"
        elif alg == "grow":
            params = ExpansionParams(
                k=int(v.get("k", 2)),
                epsilon=float(v.get("epsilon", 0.5)),
                edge_budget=int(v["budget"]) if "budget" in v else None,
                max_retries=int(v.get("retries", 50)),
                seed=seed,
                roots=int(v.get("roots", 1)),
            )
            try:
                cert, trace = grow_tree(g, params)
                rec["outcome"] = trace.outcome
                rec["invariant_violations"] = len(trace.invariant_violations)
            except EmptyAfterPeeling:
                rec["outcome"] = "empty_after_peeling"
        elif alg == "oracle":
            max_len = max(3, int(v.get("max_len", min(g.n, 12))))
            cert = shortest_rainbow_cycle(g, SearchBudget(max_len))
            brute = brute_force_enumerate(g, max_len)
            best = min((len(c) for c in brute), default=None)
            rec["brute_min"] = best
            rec["agree"] = best == (len(cert) if cert else None)
        elif alg == "bk":
            k = int(v["k"])
            witness = bk_witness(int(v["mod"]), parse_int_list(v["set"]), k)
            cert = has_rainbow_c2k(g, k)
            rec["bk_star"] = witness is None
            rec["agree"] = (witness is None) == (cert is None)
    except BudgetExceeded:
        rec["status"] = "unknown"
        return rec
    if "status" not in rec:
        rec["status"] = "found" if cert is not None else "none"
    if cert is not None:
        rec["certificate"] = cert.as_dict()
        rec["verified"] = verify_certificate(g, cert)
    return rec


def _check(expect: str, rec: dict) -> bool:
    if expect == "verified":
        return rec.get("verified", True) and rec.get("invariant_violations", 0) == 0
    if expect == "found":
        return rec["status"] == "found"
    if expect == "none":
        return rec["status"] == "none"
    return rec.get("agree", True)


def run_experiment(spec_file: str | Path) -> dict:
    """Run every stanza of ``spec_file``; the report is JSON-ready and
    deterministic given the seeds."""
    path = Path(spec_file)
    stanzas = parse_spec(path.read_text())
    return run_stanzas(stanzas, base=path.parent)


def run_stanzas(stanzas: list[Stanza], base: Path | None = None) -> dict:
    items = []
    total_records = total_failures = 0
    for st in stanzas:
        seeds = parse_int_list(st.values.get("seeds", "0"))
        expects = [e.strip() for e in st.values.get("expect", "").split(",") if e.strip()]
        records = [_run_one(st, s, base) for s in seeds]
        checks = {e: {"passed": 0, "failed": 0} for e in expects}
        for rec in records:
            for e in expects:
                checks[e]["passed" if _check(e, rec) else "failed"] += 1
        failures = sum(c["failed"] for c in checks.values())
        items.append(
            {
                "name": st.name,
                "generator": st.values["generator"],
                "algorithm": st.values["algorithm"],
                "records": records,
                "checks": checks,
                "mismatches": sum(1 for r in records if r.get("agree") is False),
                "failures": failures,
            }
        )
        total_records += len(records)
        total_failures += failures
    return {
        "items": items,
        "summary": {"stanzas": len(items), "records": total_records, "failures": total_failures, "ok": total_failures == 0},
    }
