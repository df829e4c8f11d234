"""Graph constructions: direction-colored hypercubes, Cayley bipartite
graphs over Z_m, random proper colorings, and exhaustive B_k* machinery."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .colored_graph import ColoredGraph, build_graph

MAX_HYPERCUBE_DIM = 20
MAX_BK_MODULUS = 40


class DimensionTooLarge(ValueError):
    pass


class ElementOutOfRange(ValueError):
    pass


class TooManyEdges(ValueError):
    pass


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CyclicGroupElement:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        if not 0 <= self.value < self.modulus:
            raise ElementOutOfRange(f"{self.value} is not in Z_{self.modulus}")

    def __add__(self, other: "CyclicGroupElement") -> "CyclicGroupElement":
        return CyclicGroupElement((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: "CyclicGroupElement") -> "CyclicGroupElement":
        return CyclicGroupElement((self.value - other.value) % self.modulus, self.modulus)


@dataclass(frozen=True)
class BkWitness:
    """Disjoint k-sets with equal sum mod ``modulus``."""

    B: tuple[int, ...]
    C: tuple[int, ...]
    modulus: int

    @property
    def k(self) -> int:
        return len(self.B)

    def holds(self) -> bool:
        return (
            len(self.B) == len(self.C)
            and len(set(self.B)) == len(self.B)
            and len(set(self.C)) == len(self.C)
            and not set(self.B) & set(self.C)
            and sum(self.B) % self.modulus == sum(self.C) % self.modulus
        )


def gen_hypercube(d: int) -> ColoredGraph:
    """The d-cube with each edge colored by the coordinate it flips."""
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    if d > MAX_HYPERCUBE_DIM:
        raise DimensionTooLarge(f"dimension {d} exceeds {MAX_HYPERCUBE_DIM}")
    edges = []
    for x in range(1 << d):
        for bit in range(d):
            y = x ^ (1 << bit)
            if x < y:
                edges.append((x, y, bit))
    # vertex 0 lists its edges in coordinate order, so color id == coordinate
    return build_graph(1 << d, edges)


def _check_elements(modulus: int, A: Iterable[int]) -> list[int]:
    if modulus <= 0:
        raise ValueError(f"modulus must be positive, got {modulus}")
    elems = sorted(set(A))
    bad = [a for a in elems if not 0 <= a < modulus]
    if bad:
        raise ElementOutOfRange(f"elements {bad} are not in Z_{modulus}")
    return elems


def gen_cayley_bk(modulus: int, A: Iterable[int]) -> ColoredGraph:
    """Bipartite Cayley graph: X = {0..M-1}, Y = {M..2M-1}; x ~ M+y iff
    (x - y) mod M is in A, colored by that difference.

    Color ids follow sorted(A), so color id i carries label sorted(A)[i].
    """
    elems = _check_elements(modulus, A)
    if not elems:
        raise ValueError("A must be nonempty")
    edges = []
    for x in range(modulus):
        for a in elems:
            y = (x - a) % modulus
            edges.append((x, modulus + y, a))
    return build_graph(2 * modulus, edges)


def bk_witness(modulus: int, A: Iterable[int], k: int) -> BkWitness | None:
    """First disjoint pair of k-subsets of A with equal sum, or None.

    Pairs are scanned lexicographically over (B, C) with B < C.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    elems = _check_elements(modulus, A)
    if len(elems) < 2 * k:
        return None
    subsets = list(combinations(elems, k))
    by_sum: dict[int, list[tuple[int, ...]]] = {}
    for s in subsets:
        by_sum.setdefault(sum(s) % modulus, []).append(s)
    for B in subsets:
        bs = set(B)
        for C in by_sum[sum(B) % modulus]:
            if C > B and bs.isdisjoint(C):
                return BkWitness(B, C, modulus)
    return None


def is_bk_star(modulus: int, A: Iterable[int], k: int) -> bool:
    return bk_witness(modulus, A, k) is None


def max_bk_star_exhaustive(modulus: int, k: int, size_cap: int | None = None) -> tuple[int, ...]:
    """Largest B_k* subset of Z_modulus (at most ``size_cap`` elements).

    Depth-first branch and bound over increasing elements.  Being B_k* is
    inherited by subsets and invariant under translation, so the search
    fixes 0 as the smallest element and prunes a branch as soon as the
    newest element completes a witness.  Deterministic: returns the
    lexicographically first optimum.
    """
    if modulus <= 0 or k < 1:
        raise ValueError("modulus and k must be positive")
    if modulus > MAX_BK_MODULUS:
        raise SearchSpaceTooLarge(f"modulus {modulus} exceeds {MAX_BK_MODULUS}")
    cap = modulus if size_cap is None else min(size_cap, modulus)
    if cap <= 0:
        return ()

    best: list[int] = []
    chosen: list[int] = []
    # k-subsets of `chosen`, bucketed by sum mod modulus
    by_sum: dict[int, list[frozenset]] = {}

    def add(x: int) -> list[tuple[int, frozenset]] | None:
        added = []
        for rest in combinations(chosen, k - 1):
            S = frozenset(rest + (x,))
            s = (sum(rest) + x) % modulus
            bucket = by_sum.setdefault(s, [])
            if any(S.isdisjoint(T) for T in bucket):
                for s2, S2 in added:
                    by_sum[s2].remove(S2)
                return None
            bucket.append(S)
            added.append((s, S))
        return added

    def dfs(start: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) == cap or len(best) == cap:
            return
        for x in range(start, modulus):
            if len(chosen) + (modulus - x) <= len(best):
                return
            added = add(x)
            if added is None:
                continue
            chosen.append(x)
            dfs(x + 1)
            chosen.pop()
            for s, S in added:
                by_sum[s].remove(S)

    add(0)
    chosen.append(0)
    dfs(1)
    return tuple(best)


def gen_random_proper(n: int, m: int, seed=None) -> ColoredGraph:
    """Random simple graph with m edges, colored greedily.

    Each edge (in random order) takes the smallest color absent at both
    endpoints, so at most 2*maxdeg - 1 colors are used.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    total = n * (n - 1) // 2
    if m > total:
        raise TooManyEdges(f"{m} edges requested but K_{n} has {total}")
    rng = random.Random(seed)
    if 2 * m > total:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = rng.sample(pairs, m)
    else:
        seen: set[tuple[int, int]] = set()
        chosen = []
        while len(chosen) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            e = (min(u, v), max(u, v))
            if e not in seen:
                seen.add(e)
                chosen.append(e)
    used: list[set[int]] = [set() for _ in range(n)]
    edges = []
    for u, v in chosen:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        edges.append((u, v, c))
    # greedy color c first appears after c - 1, so normalized ids match
    return build_graph(n, edges)
