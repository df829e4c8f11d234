"""Properly edge-colored simple graphs and the structural preprocessing
used by the search routines.

Vertices are dense integers ``0..n-1``.  Colors are normalized at build
time to dense integers ``0..num_colors-1`` in first-appearance order; the
original labels are kept in ``ColoredGraph.color_labels``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

# Above this many colors ColorSet switches from an int bit mask to a set.
MASK_LIMIT = 64


class GraphError(ValueError):
    """Base class for rejected graph input."""

    def __init__(self, message: str, edge: tuple | None = None):
        super().__init__(message)
        self.edge = edge


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class ImproperColoring(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


@dataclass(frozen=True)
class ColoredEdge:
    u: int
    v: int
    color: int


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """Immutable simple graph with one color per edge.

    ``edges`` holds ``(u, v, color)`` triples with ``u < v`` in insertion
    order.  ``adj[v]`` is a tuple of ``(neighbor, color)`` pairs sorted by
    neighbor.  ``num_colors`` is the size of the color universe, which a
    subgraph inherits from its parent even when some colors vanish.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    num_colors: int
    color_labels: tuple[Hashable, ...]
    adj: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)
    _color_of: dict[tuple[int, int], int] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_color(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        return self._color_of.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_color(u, v) is not None

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adj[v]]

    def colors_used(self) -> set[int]:
        return {c for _, _, c in self.edges}

    def active_vertices(self) -> list[int]:
        """Vertices of positive degree."""
        return [v for v in range(self.n) if self.adj[v]]

    def min_degree(self) -> int:
        """Minimum degree over vertices of positive degree (0 if edgeless)."""
        degs = [len(a) for a in self.adj if a]
        return min(degs) if degs else 0

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def colored_edges(self) -> list[ColoredEdge]:
        return [ColoredEdge(u, v, c) for u, v, c in self.edges]

    def subgraph(self, keep: Iterable[tuple[int, int, int]]) -> "ColoredGraph":
        """Spanning subgraph on the same vertex ids and color universe."""
        return _assemble(self.n, list(keep), self.num_colors, self.color_labels)

    def induced(self, vertices: Iterable[int]) -> "ColoredGraph":
        """Subgraph induced by ``vertices``; other vertices stay isolated."""
        vs = set(vertices)
        return self.subgraph(e for e in self.edges if e[0] in vs and e[1] in vs)

    def __repr__(self) -> str:
        return f"ColoredGraph(n={self.n}, m={self.m}, colors={len(self.colors_used())})"


def _assemble(n, edges, num_colors, labels) -> ColoredGraph:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    color_of = {}
    for u, v, c in edges:
        adj[u].append((v, c))
        adj[v].append((u, c))
        color_of[(u, v)] = c
    return ColoredGraph(
        n=n,
        edges=tuple(edges),
        num_colors=num_colors,
        color_labels=tuple(labels),
        adj=tuple(tuple(sorted(a)) for a in adj),
        _color_of=color_of,
    )


def build_graph(
    n: int,
    edges: Iterable[Sequence],
    *,
    require_proper: bool = True,
) -> ColoredGraph:
    """Build a graph from ``(u, v, color_label)`` triples.

    Raises LoopEdge, DuplicateEdge, VertexOutOfRange, and (unless
    ``require_proper`` is False) ImproperColoring, each naming the offending
    edge.  Improper graphs are only ever built for ``check_proper``.
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    label_id: dict[Hashable, int] = {}
    labels: list[Hashable] = []
    norm: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    at_vertex: dict[tuple[int, int], tuple[int, int, int]] = {}
    for raw in edges:
        u, v, label = raw
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}", (u, v, label))
        if u == v:
            raise LoopEdge(f"loop at vertex {u}", (u, v, label))
        a, b = min(u, v), max(u, v)
        if (a, b) in seen:
            raise DuplicateEdge(f"edge ({a}, {b}) appears more than once", (u, v, label))
        seen.add((a, b))
        if label not in label_id:
            label_id[label] = len(labels)
            labels.append(label)
        c = label_id[label]
        if require_proper:
            for x in (a, b):
                prev = at_vertex.get((x, c))
                if prev is not None:
                    raise ImproperColoring(
                        f"edges {prev[:2]} and ({a}, {b}) share vertex {x} and color {label!r}",
                        (u, v, label),
                    )
                at_vertex[(x, c)] = (a, b, c)
        norm.append((a, b, c))
    return _assemble(n, norm, len(labels), labels)


def check_proper(g: ColoredGraph) -> list[tuple[int, int, tuple[int, int], tuple[int, int]]]:
    """Every pair of same-colored edges meeting at a vertex, as
    ``(vertex, color, edge1, edge2)``.  Empty iff the coloring is proper."""
    out = []
    for v in range(g.n):
        by_color: dict[int, list[int]] = {}
        for w, c in g.adj[v]:
            by_color.setdefault(c, []).append(w)
        for c in sorted(by_color):
            ws = by_color[c]
            for i in range(len(ws)):
                for j in range(i + 1, len(ws)):
                    e1 = (min(v, ws[i]), max(v, ws[i]))
                    e2 = (min(v, ws[j]), max(v, ws[j]))
                    out.append((v, c, e1, e2))
    return out


class ColorSet:
    """Set of color ids.

    Backed by an int bit mask when the color universe has at most
    ``MASK_LIMIT`` colors and by a Python set otherwise; both backends
    behave identically.
    """

    __slots__ = ("_mask", "_set")

    def __init__(self, colors: Iterable[int] = (), num_colors: int = 0, *, backend: str | None = None):
        if backend is None:
            backend = "mask" if num_colors <= MASK_LIMIT else "set"
        if backend not in ("mask", "set"):
            raise ValueError(f"unknown backend {backend!r}")
        self._mask: int | None = 0 if backend == "mask" else None
        self._set: set[int] | None = set() if backend == "set" else None
        for c in colors:
            self.add(c)

    @property
    def backend(self) -> str:
        return "mask" if self._set is None else "set"

    def add(self, c: int) -> None:
        if self._set is None:
            self._mask |= 1 << c
        else:
            self._set.add(c)

    def discard(self, c: int) -> None:
        if self._set is None:
            self._mask &= ~(1 << c)
        else:
            self._set.discard(c)

    def __contains__(self, c: int) -> bool:
        if self._set is None:
            return (self._mask >> c) & 1 == 1
        return c in self._set

    def isdisjoint(self, other: "ColorSet") -> bool:
        if self._set is None and other._set is None:
            return self._mask & other._mask == 0
        return set(self).isdisjoint(other)

    def __iter__(self):
        if self._set is not None:
            return iter(sorted(self._set))
        mask, out, c = self._mask, [], 0
        while mask:
            if mask & 1:
                out.append(c)
            mask >>= 1
            c += 1
        return iter(out)

    def __len__(self) -> int:
        if self._set is None:
            return bin(self._mask).count("1")
        return len(self._set)

    def __eq__(self, other) -> bool:
        if isinstance(other, ColorSet):
            return set(self) == set(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"ColorSet({list(self)})"


def degree_to_set(g: ColoredGraph, v: int, X: Iterable[int], allowed: Iterable[int] | None = None) -> int:
    """Number of neighbors of ``v`` inside ``X`` joined by an allowed color."""
    xs = X if isinstance(X, (set, frozenset)) else set(X)
    if allowed is None:
        return sum(1 for w, _ in g.adj[v] if w in xs)
    ok = allowed if isinstance(allowed, (set, frozenset, ColorSet)) else set(allowed)
    return sum(1 for w, c in g.adj[v] if w in xs and c in ok)


def two_coloring(g: ColoredGraph) -> list[int] | None:
    """Sides 0/1 for a bipartite graph by BFS, or None if an odd cycle exists."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def bipartite_half(g: ColoredGraph, seed=None) -> tuple[ColoredGraph, list[int]]:
    """Bipartite spanning subgraph keeping at least half of the edges.

    A bipartite input is returned whole.  Otherwise vertices are placed
    greedily in random order on the side cutting more edges to already
    placed neighbors, then single vertices are moved while a move
    strictly increases the cut.  At a local optimum every vertex has at
    least half its edges crossing, so the cut has at least ceil(m/2) edges.
    """
    sides = two_coloring(g)
    if sides is not None:
        return g, sides
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    side = [-1] * g.n
    for v in order:
        on = [0, 0]
        for w, _ in g.adj[v]:
            if side[w] != -1:
                on[side[w]] += 1
        # joining side s cuts the edges to neighbors on side 1 - s
        if on[0] == on[1]:
            side[v] = rng.randrange(2)
        else:
            side[v] = 0 if on[1] > on[0] else 1
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            same = sum(1 for w, _ in g.adj[v] if side[w] == side[v])
            if 2 * same > len(g.adj[v]):
                side[v] = 1 - side[v]
                improved = True
    keep = [e for e in g.edges if side[e[0]] != side[e[1]]]
    return g.subgraph(keep), side


def core_vertices(g: ColoredGraph, threshold: int) -> set[int]:
    """Vertices surviving repeated deletion of vertices of degree <= threshold."""
    deg = [len(a) for a in g.adj]
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= threshold)
    for v in queue:
        alive[v] = False
    while queue:
        v = queue.popleft()
        for w, _ in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] <= threshold:
                    alive[w] = False
                    queue.append(w)
    return {v for v in range(g.n) if alive[v]}


def peel_min_degree(g: ColoredGraph, threshold: int) -> ColoredGraph:
    """Repeatedly delete vertices of degree <= threshold.

    Vertex ids are preserved: deleted vertices remain as isolated vertices,
    so the result has minimum positive degree > threshold or no edges.
    """
    return g.induced(core_vertices(g, threshold))


@dataclass(frozen=True)
class RainbowCycleCertificate:
    """A cycle given as its vertex sequence plus the color of each step.

    ``colors[i]`` is the color of the edge ``vertices[i] -- vertices[i+1]``
    with the last entry closing back to ``vertices[0]``.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_vertices(cls, g: ColoredGraph, vertices: Sequence[int]) -> "RainbowCycleCertificate":
        vs = tuple(vertices)
        cs = tuple(g.edge_color(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
        return cls(vs, cs)

    def as_dict(self) -> dict:
        return {"length": len(self.vertices), "vertices": list(self.vertices), "colors": list(self.colors)}


def certificate_defect(g: ColoredGraph, cert: RainbowCycleCertificate) -> str | None:
    """Reason code for why ``cert`` fails against ``g``; None if it holds."""
    vs, cs = cert.vertices, cert.colors
    if len(vs) < 3:
        return "too_short"
    if len(cs) != len(vs):
        return "color_count_mismatch"
    if any(not (0 <= v < g.n) for v in vs):
        return "vertex_out_of_range"
    if len(set(vs)) != len(vs):
        return "repeated_vertex"
    for i, u in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        c = g.edge_color(u, w)
        if c is None:
            return "missing_edge"
        if c != cs[i]:
            return "wrong_color"
    if len(set(cs)) != len(cs):
        return "repeated_color"
    return None


def verify_certificate(g: ColoredGraph, cert: RainbowCycleCertificate) -> bool:
    return certificate_defect(g, cert) is None
