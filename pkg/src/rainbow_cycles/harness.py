"""Desk-scale oracles: the exact maximum size f(n) of a rainbow-acyclic
properly colored graph, the hypercube lower-bound table, and the sweep
checking B_k* sets against rainbow C_2k in Cayley graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .colored_graph import ColoredGraph, build_graph, check_proper, verify_certificate
from .detect import InstanceTooLarge, has_rainbow_c2k, is_rainbow_acyclic
from .generators import bk_witness, gen_cayley_bk, gen_hypercube

EXACT_F_MAX_N = 6


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    f_value: int
    witness: ColoredGraph
    graphs_checked: int = 0
    colorings_checked: int = 0


def _has_triangle(n: int, edges) -> bool:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return any(adj[u] & adj[v] for u, v in edges)


def _cycle_edge_sets(n: int, edges) -> list[frozenset[int]]:
    """Each simple cycle once, as a set of edge indices."""
    index = {}
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        index[(u, v)] = index[(v, u)] = i
        adj[u].append(v)
        adj[v].append(u)
    out = []

    def walk(path):
        for w in adj[path[-1]]:
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                cyc = path + [w]
                out.append(frozenset(index[(cyc[j], cyc[j + 1])] for j in range(len(path))))
            elif w > path[0] and w not in path:
                walk(path + [w])

    for s in range(n):
        walk([s])
    return out


def _acyclic_coloring(n: int, edges, stats: list[int]) -> list[int] | None:
    """A proper coloring of ``edges`` with no rainbow cycle, or None.

    Colorings are enumerated up to renaming (restricted growth: each edge
    joins an existing color class or opens the next one), i.e. as
    partitions of the edge set into matchings.  A branch dies as soon as
    the edge just colored completes a rainbow cycle.
    """
    m = len(edges)
    closing: list[list[frozenset[int]]] = [[] for _ in range(m)]
    for cyc in _cycle_edge_sets(n, edges):
        closing[max(cyc)].append(cyc)
    color = [-1] * m
    at_vertex: list[set[int]] = [set() for _ in range(n)]

    def assign(i: int, classes: int) -> bool:
        if i == m:
            stats[0] += 1
            return True
        u, v = edges[i]
        for c in range(classes + 1):
            if c in at_vertex[u] or c in at_vertex[v]:
                continue
            color[i] = c
            if any(len({color[e] for e in cyc}) == len(cyc) for cyc in closing[i]):
                continue
            at_vertex[u].add(c)
            at_vertex[v].add(c)
            if assign(i + 1, max(classes, c + 1)):
                return True
            at_vertex[u].discard(c)
            at_vertex[v].discard(c)
        color[i] = -1
        return False

    return list(color) if assign(0, 0) else None


def exact_f(n: int, *, skip_triangles: bool = True) -> ExtremalResult:
    """Exhaustive f(n): the most edges in a properly colored graph on n
    vertices without a rainbow cycle, with a witness.

    Labeled graphs are scanned by edge count, largest first, stopping at
    the first count admitting a rainbow-acyclic coloring.  Graphs with a
    triangle are skipped, since a proper coloring makes any triangle
    rainbow (``skip_triangles=False`` leaves them to the coloring search,
    which reaches the same answer more slowly).  Every witness is
    re-checked by ``is_rainbow_acyclic``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > EXACT_F_MAX_N:
        raise InstanceTooLarge(f"exact_f is limited to n <= {EXACT_F_MAX_N}")
    pairs = list(combinations(range(n), 2))
    graphs = 0
    stats = [0]
    for m in range(len(pairs), -1, -1):
        for edges in combinations(pairs, m):
            if skip_triangles and _has_triangle(n, edges):
                continue
            graphs += 1
            coloring = _acyclic_coloring(n, edges, stats)
            if coloring is None:
                continue
            g = build_graph(n, [(u, v, c) for (u, v), c in zip(edges, coloring)])
            if check_proper(g) or not is_rainbow_acyclic(g):
                raise AssertionError(f"coloring search returned a bad witness on {edges}")
            return ExtremalResult(n, m, g, graphs, stats[0])
    raise AssertionError("unreachable: the empty graph is rainbow-acyclic")


@dataclass(frozen=True)
class HypercubeRow:
    d: int
    n: int
    edges: int
    bound: float
    acyclic: bool
    proper: bool

    @property
    def ok(self) -> bool:
        return self.acyclic and self.proper and math.isclose(self.edges, self.bound)


def hypercube_f_lower_bound_check(d_max: int) -> list[HypercubeRow]:
    """For d = 1..d_max: the d-cube's edge count against (n/2) log2 n,
    with rainbow-acyclicity confirmed by exact search."""
    if not 1 <= d_max <= 7:
        raise ValueError(f"d_max must lie in 1..7, got {d_max}")
    rows = []
    for d in range(1, d_max + 1):
        g = gen_hypercube(d)
        rows.append(
            HypercubeRow(
                d=d,
                n=g.n,
                edges=g.m,
                bound=g.n / 2 * math.log2(g.n),
                acyclic=is_rainbow_acyclic(g),
                proper=not check_proper(g),
            )
        )
    return rows


@dataclass
class SweepReport:
    checked: int = 0
    bk_star: int = 0
    discrepancies: list[dict] = field(default_factory=list)
    bad_certificates: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies and not self.bad_certificates

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "bk_star": self.bk_star,
            "with_witness": self.checked - self.bk_star,
            "discrepancies": self.discrepancies,
            "bad_certificates": self.bad_certificates,
            "ok": self.ok,
        }


def cayley_equivalence_sweep(mod_max: int, set_size_max: int, k_values=(2, 3), mod_min: int = 1) -> SweepReport:
    """Check, for every modulus, every A with 1 <= |A| <= set_size_max and
    every k, that A is B_k* exactly when its Cayley graph has no rainbow
    cycle of length 2k."""
    if mod_max > 12 or set_size_max > 4:
        raise ValueError("sweep is limited to mod_max <= 12 and set_size_max <= 4")
    report = SweepReport()
    for modulus in range(mod_min, mod_max + 1):
        for size in range(1, min(set_size_max, modulus) + 1):
            for A in combinations(range(modulus), size):
                g = gen_cayley_bk(modulus, A)
                for k in k_values:
                    witness = bk_witness(modulus, A, k)
                    cycle = has_rainbow_c2k(g, k)
                    report.checked += 1
                    report.bk_star += witness is None
                    case = {"modulus": modulus, "A": list(A), "k": k}
                    if witness is not None and not witness.holds():
                        report.bad_certificates.append({**case, "witness": [witness.B, witness.C]})
                    if cycle is not None and (not verify_certificate(g, cycle) or len(cycle) != 2 * k):
                        report.bad_certificates.append({**case, "cycle": cycle.as_dict()})
                    if (witness is None) != (cycle is None):
                        report.discrepancies.append(
                            {
                                **case,
                                "bk_star": witness is None,
                                "rainbow_cycle": None if cycle is None else cycle.as_dict(),
                            }
                        )
    return report
