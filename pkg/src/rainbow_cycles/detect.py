"""Exact rainbow cycle search.

``shortest_rainbow_cycle`` and ``has_rainbow_c2k`` run a depth-bounded
backtracking search over rainbow paths.  Each length class is searched
separately, shortest first.  A cycle is found from its smallest vertex
(the anchor), only through larger vertices, with the second vertex
smaller than the last.  Anchors and neighbors are visited in increasing
order, so the first hit in a length class is the lexicographically
smallest canonical cycle of that length.

``brute_force_enumerate`` is deliberately naive and shares no code with
the search: it lists every simple cycle and filters afterwards.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .colored_graph import ColoredGraph, ColorSet, RainbowCycleCertificate

BRUTE_FORCE_MAX_N = 12
BRUTE_FORCE_MAX_LENGTH = 12


class BudgetExceeded(RuntimeError):
    """The node limit ran out before a length class was exhausted.

    The answer is unknown, which is different from "no cycle".
    """

    def __init__(self, nodes: int, length: int):
        super().__init__(f"node limit of {nodes} reached while searching length {length}")
        self.nodes = nodes
        self.length = length


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_length: int
    node_limit: int | None = None

    def __post_init__(self):
        if self.max_length < 3:
            raise ValueError(f"max_length must be at least 3, got {self.max_length}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int | None):
        self.nodes = 0
        self.limit = limit


def _distances(g: ColoredGraph, anchor: int) -> list[int]:
    """BFS distance from ``anchor`` using only vertices >= anchor."""
    inf = g.n + 1
    dist = [inf] * g.n
    dist[anchor] = 0
    queue = deque([anchor])
    while queue:
        v = queue.popleft()
        for w, _ in g.adj[v]:
            if w > anchor and dist[w] == inf:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _search_length(g: ColoredGraph, length: int, counter: _Counter, backend: str | None):
    """First canonical rainbow cycle with exactly ``length`` vertices."""
    adj = g.adj
    for anchor in range(g.n):
        if len(adj[anchor]) < 2:
            continue
        dist = _distances(g, anchor)
        anchor_color = {w: c for w, c in adj[anchor]}
        path = [anchor]
        on_path = {anchor}
        colors: list[int] = []
        used = ColorSet(num_colors=g.num_colors, backend=backend)

        def extend(v: int) -> bool:
            counter.nodes += 1
            if counter.limit is not None and counter.nodes > counter.limit:
                raise BudgetExceeded(counter.limit, length)
            depth = len(path) - 1
            if depth == length - 1:
                c = anchor_color.get(v)
                if c is not None and c not in used and path[1] < v:
                    colors.append(c)
                    return True
                return False
            remaining = length - depth - 1
            for w, c in adj[v]:
                if w <= anchor or w in on_path or c in used or dist[w] > remaining:
                    continue
                if depth == length - 2 and w < path[1]:
                    continue
                path.append(w)
                on_path.add(w)
                colors.append(c)
                used.add(c)
                if extend(w):
                    return True
                used.discard(c)
                colors.pop()
                on_path.discard(w)
                path.pop()
            return False

        if extend(anchor):
            return RainbowCycleCertificate(tuple(path), tuple(colors))
    return None


def shortest_rainbow_cycle(
    g: ColoredGraph,
    budget: SearchBudget | None = None,
    *,
    backend: str | None = None,
) -> RainbowCycleCertificate | None:
    """Minimum-length rainbow cycle of length <= budget.max_length, or None.

    Raises BudgetExceeded when the node limit runs out first.  ``backend``
    forces the color-set representation ("mask" or "set").
    """
    if budget is None:
        budget = SearchBudget(max(3, g.n))
    # a rainbow cycle needs as many colors as vertices
    top = min(budget.max_length, g.n, len(g.colors_used()))
    counter = _Counter(budget.node_limit)
    for length in range(3, top + 1):
        cert = _search_length(g, length, counter, backend)
        if cert is not None:
            return cert
    return None


def has_rainbow_c2k(
    g: ColoredGraph,
    k: int,
    budget: SearchBudget | None = None,
    *,
    backend: str | None = None,
) -> RainbowCycleCertificate | None:
    """A rainbow cycle of length exactly 2k, or None."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    length = 2 * k
    if length > g.n or length > len(g.colors_used()):
        return None
    counter = _Counter(budget.node_limit if budget else None)
    return _search_length(g, length, counter, backend)


def is_rainbow_acyclic(g: ColoredGraph) -> bool:
    """True iff no rainbow cycle of any length exists.  Exponential in
    the worst case."""
    return shortest_rainbow_cycle(g, SearchBudget(max(3, g.n))) is None


def brute_force_enumerate(g: ColoredGraph, max_length: int) -> list[RainbowCycleCertificate]:
    """Every rainbow cycle of length <= max_length, once each.

    Each cycle is listed in canonical form: smallest vertex first, and the
    smaller of its two neighbors second.
    """
    if g.n > BRUTE_FORCE_MAX_N or max_length > BRUTE_FORCE_MAX_LENGTH:
        raise InstanceTooLarge(
            f"brute force is limited to n <= {BRUTE_FORCE_MAX_N} and length <= {BRUTE_FORCE_MAX_LENGTH}"
        )
    nbrs = [sorted(w for w, _ in g.adj[v]) for v in range(g.n)]
    cycles = []

    def walk(path):
        v = path[-1]
        for w in nbrs[v]:
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                cycles.append(tuple(path))
            elif w > path[0] and w not in path and len(path) < max_length:
                walk(path + [w])

    for s in range(g.n):
        walk([s])

    out = []
    for cyc in cycles:
        cert = RainbowCycleCertificate.from_vertices(g, cyc)
        if len(set(cert.colors)) == len(cert.colors):
            out.append(cert)
    return out
