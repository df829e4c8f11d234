"""Command line front end: ``rainbow gen|find|grow|extremal|sweep|hypercube|experiment``.

Reports go to stdout as JSON.  Exit status: 0 on success, 1 when a
checked assertion fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .colored_graph import GraphError
from .detect import BudgetExceeded, SearchBudget, has_rainbow_c2k, is_rainbow_acyclic, shortest_rainbow_cycle
from .edgelist import EdgeListError, format_edge_list, read_edge_list, write_edge_list
from .experiment import SpecParseError, parse_int_list, run_experiment
from .generators import gen_cayley_bk, gen_hypercube, gen_random_proper
from .harness import cayley_equivalence_sweep, exact_f, hypercube_f_lower_bound_check
from .level_tree import EmptyAfterPeeling, ExpansionParams, derive_seed, grow_tree, theorem_k

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _int_list(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like '0,1,2' or '0..3', got {text!r}") from None


def cmd_gen(args) -> int:
    if args.family == "hypercube":
        g = gen_hypercube(args.d)
    elif args.family == "cayley":
        g = gen_cayley_bk(args.mod, args.set)
    else:
        g = gen_random_proper(args.n, args.m, args.seed)
    if args.out:
        write_edge_list(g, args.out)
    else:
        sys.stdout.write(format_edge_list(g))
    return EXIT_OK


def cmd_find(args) -> int:
    g = read_edge_list(args.input)
    budget_len = args.max_len if args.max_len is not None else max(3, g.n)
    try:
        if args.mode == "shortest":
            cert = shortest_rainbow_cycle(g, SearchBudget(budget_len, args.node_limit))
        elif args.mode == "exact":
            if args.k is None:
                raise UsageError("find exact needs --k")
            cert = has_rainbow_c2k(g, args.k, SearchBudget(3, args.node_limit) if args.node_limit else None)
        else:
            if args.node_limit:
                cert = shortest_rainbow_cycle(g, SearchBudget(max(3, g.n), args.node_limit))
            else:
                cert = None if is_rainbow_acyclic(g) else shortest_rainbow_cycle(g)
    except BudgetExceeded as exc:
        _emit({"status": "unknown", "length": None, "vertices": None, "colors": None, "reason": str(exc)})
        return EXIT_OK
    if cert is None:
        _emit({"status": "none", "length": None, "vertices": None, "colors": None})
    else:
        _emit({"status": "found", **cert.as_dict()})
    return EXIT_OK


def cmd_grow(args) -> int:
    g = read_edge_list(args.input)
    if args.k is None and args.epsilon is None:
        raise UsageError("grow needs --epsilon or --k")
    k = args.k if args.k is not None else theorem_k(args.epsilon)
    params = ExpansionParams(
        k=k,
        epsilon=args.epsilon if args.epsilon is not None else 0.5,
        edge_budget=args.budget,
        max_retries=args.retries,
        seed=args.seed,
        roots=args.roots,
    )
    results = []
    traces = []
    for r in range(args.runs):
        run_params = params if args.runs == 1 else replace(params, seed=derive_seed(args.seed, r))
        try:
            cert, trace = grow_tree(g, run_params)
        except EmptyAfterPeeling as exc:
            _emit({"status": "empty_after_peeling", "reason": str(exc)})
            return EXIT_OK
        traces.append(trace)
        results.append(trace.to_dict())
    found = [t for t in traces if t.certificate is not None]
    report = {
        "status": "found" if found else "none",
        "k": k,
        "runs": len(traces),
        "found": len(found),
        "certificate": found[0].certificate.as_dict() if found else None,
    }
    if args.trace:
        payload = results[0] if len(results) == 1 else {"runs": results}
        Path(args.trace).write_text(json.dumps(payload, indent=2) + "\n")
        report["trace"] = str(args.trace)
    if args.plot:
        from .plotting import plot_growth

        report["figure"] = str(plot_growth(traces, args.plot))
    _emit(report)
    return EXIT_OK


def cmd_extremal(args) -> int:
    res = exact_f(args.n)
    if args.witness:
        write_edge_list(res.witness, args.witness)
    _emit(
        {
            "n": res.n,
            "f": res.f_value,
            "witness": [list(e) for e in res.witness.edges],
            "graphs_checked": res.graphs_checked,
        }
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    report = cayley_equivalence_sweep(args.mod_max, args.set_size_max, args.k)
    out = report.to_dict()
    if args.plot:
        from .plotting import plot_sweep

        rows = []
        for modulus in range(1, args.mod_max + 1):
            single = cayley_equivalence_sweep(modulus, args.set_size_max, args.k, mod_min=modulus)
            rows.append((modulus, single.bk_star, single.checked - single.bk_star))
        out["figure"] = str(plot_sweep(rows, args.plot))
    _emit(out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_hypercube(args) -> int:
    rows = hypercube_f_lower_bound_check(args.d_max)
    out = {
        "rows": [
            {"d": r.d, "n": r.n, "edges": r.edges, "bound": r.bound, "acyclic": r.acyclic, "proper": r.proper}
            for r in rows
        ],
        "ok": all(r.ok for r in rows),
    }
    if args.plot:
        from .plotting import plot_hypercube_bound

        out["figure"] = str(plot_hypercube_bound(rows, args.plot))
    _emit(out)
    return EXIT_OK if out["ok"] else EXIT_FAIL


def cmd_experiment(args) -> int:
    report = run_experiment(args.spec)
    _emit(report)
    return EXIT_OK if report["summary"]["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated graph as an edge list")
    fam = gen.add_subparsers(dest="family", required=True)
    h = fam.add_parser("hypercube")
    h.add_argument("--d", type=int, required=True)
    c = fam.add_parser("cayley")
    c.add_argument("--mod", type=int, required=True)
    c.add_argument("--set", type=_int_list, required=True)
    r = fam.add_parser("random")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    for q in (h, c, r):
        q.add_argument("--out", type=Path, help="output file (default: stdout)")
    gen.set_defaults(func=cmd_gen)

    find = sub.add_parser("find", help="exact rainbow cycle search")
    find.add_argument("mode", choices=["shortest", "exact", "acyclic"])
    find.add_argument("--input", type=Path, required=True)
    find.add_argument("--k", type=int)
    find.add_argument("--max-len", type=int)
    find.add_argument("--node-limit", type=int)
    find.set_defaults(func=cmd_find)

    grow = sub.add_parser("grow", help="randomized level-tree search")
    grow.add_argument("--input", type=Path, required=True)
    grow.add_argument("--epsilon", type=float)
    grow.add_argument("--k", type=int)
    grow.add_argument("--budget", type=int, help="edges per vertex per level (default ceil(n^eps))")
    grow.add_argument("--retries", type=int, default=50)
    grow.add_argument("--seed", type=int, default=0)
    grow.add_argument("--runs", type=int, default=1)
    grow.add_argument("--roots", type=int, default=1)
    grow.add_argument("--trace", type=Path)
    grow.add_argument("--plot", type=Path, help="write a level-growth figure")
    grow.set_defaults(func=cmd_grow)

    ext = sub.add_parser("extremal", help="exact f(n) for n <= 6")
    ext.add_argument("--n", type=int, required=True)
    ext.add_argument("--witness", type=Path)
    ext.set_defaults(func=cmd_extremal)

    sw = sub.add_parser("sweep", help="B_k* versus rainbow C_2k on Cayley graphs")
    sw.add_argument("--mod-max", type=int, default=12)
    sw.add_argument("--set-size-max", type=int, default=4)
    sw.add_argument("--k", type=_int_list, default=[2, 3])
    sw.add_argument("--plot", type=Path)
    sw.set_defaults(func=cmd_sweep)

    hc = sub.add_parser("hypercube", help="hypercube rainbow-acyclicity table")
    hc.add_argument("--d-max", type=int, default=7)
    hc.add_argument("--plot", type=Path)
    hc.set_defaults(func=cmd_hypercube)

    ex = sub.add_parser("experiment", help="run a batch spec file")
    ex.add_argument("spec", type=Path)
    ex.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EdgeListError, GraphError, SpecParseError, ValueError, OSError) as exc:
        print(f"rainbow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
