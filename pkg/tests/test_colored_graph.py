import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_is_rainbow_cycle, random_graph_case
from rainbow_cycles import (
    ColorSet,
    DuplicateEdge,
    ImproperColoring,
    LoopEdge,
    RainbowCycleCertificate,
    bipartite_half,
    build_graph,
    certificate_defect,
    check_proper,
    degree_to_set,
    gen_cayley_bk,
    gen_hypercube,
    gen_random_proper,
    peel_min_degree,
    shortest_rainbow_cycle,
    verify_certificate,
)
from rainbow_cycles.colored_graph import VertexOutOfRange, core_vertices, two_coloring


def test_smallest_graph():
    g = build_graph(2, [(0, 1, 0)])
    assert g.m == 1 and g.n == 2
    assert g.adj[0] == ((1, 0),) and g.adj[1] == ((0, 0),)


def test_improper_rejected_names_vertex():
    with pytest.raises(ImproperColoring) as exc:
        build_graph(3, [(0, 1, 0), (1, 2, 0)])
    assert "vertex 1" in str(exc.value)
    assert exc.value.edge == (1, 2, 0)


def test_alternating_c4_is_valid(c4_alternating):
    assert c4_alternating.m == 4
    assert c4_alternating.colors_used() == {0, 1}


def test_loop_and_duplicate_rejected():
    with pytest.raises(LoopEdge):
        build_graph(2, [(1, 1, 0)])
    with pytest.raises(DuplicateEdge) as exc:
        build_graph(3, [(0, 1, 0), (1, 0, 1)])
    assert exc.value.edge == (1, 0, 1)
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2, 0)])


def test_color_labels_normalized_in_first_appearance_order():
    g = build_graph(3, [(0, 1, 70), (1, 2, 5), (0, 2, 9)])
    assert g.color_labels == (70, 5, 9)
    assert [c for _, _, c in g.edges] == [0, 1, 2]


def test_check_proper_examples(c4_alternating):
    assert check_proper(c4_alternating) == []
    star = build_graph(4, [(0, 1, 0), (0, 2, 0), (0, 3, 0)], require_proper=False)
    bad = check_proper(star)
    assert len(bad) == 3
    assert all(v == 0 and c == 0 for v, c, _, _ in bad)
    assert check_proper(gen_hypercube(3)) == []


def test_degree_to_set(k23):
    c4 = build_graph(4, [(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 0, 3)])
    assert degree_to_set(c4, 0, {1, 3}) == 2
    assert degree_to_set(c4, 0, {2}) == 0
    # recount from the edge list for every vertex, color and target set
    for v in (0, 1):
        for color in range(3):
            expected = sum(1 for a, b, c in k23.edges if v in (a, b) and c == color and ({a, b} - {v}) <= {2, 3, 4})
            assert expected == 1
            assert degree_to_set(k23, v, {2, 3, 4}, {color}) == expected


def test_two_coloring():
    assert two_coloring(gen_hypercube(3)) is not None
    assert two_coloring(build_graph(3, [(0, 1, 0), (1, 2, 1), (0, 2, 2)])) is None


def _max_cut(g):
    best = 0
    for bits in itertools.product((0, 1), repeat=g.n):
        best = max(best, sum(1 for u, v, _ in g.edges if bits[u] != bits[v]))
    return best


def test_bipartite_half_examples(triangle):
    q3 = gen_hypercube(3)
    h, sides = bipartite_half(q3, seed=1)
    assert h is q3
    assert all(sides[u] != sides[v] for u, v, _ in q3.edges)

    h, _ = bipartite_half(triangle, seed=0)
    assert h.m == 2

    k4 = build_graph(4, [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])
    assert _max_cut(k4) == 4
    for seed in range(20):
        h, _ = bipartite_half(k4, seed=seed)
        assert 3 <= h.m <= 4


@pytest.mark.parametrize("seed", range(100))
def test_bipartite_half_keeps_half(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 14)
    m = rng.randint(0, n * (n - 1) // 2)
    g = gen_random_proper(n, m, seed)
    h, sides = bipartite_half(g, seed=seed)
    assert 2 * h.m >= g.m
    assert all(sides[u] != sides[v] for u, v, _ in h.edges)
    assert set(h.edges) <= set(g.edges)
    assert check_proper(h) == []


def test_peel_examples():
    p3 = build_graph(3, [(0, 1, 0), (1, 2, 1)])
    assert peel_min_degree(p3, 1).m == 0
    c6 = build_graph(6, [(i, (i + 1) % 6, i % 2) for i in range(6)])
    assert set(peel_min_degree(c6, 1).edges) == set(c6.edges)
    k44 = gen_cayley_bk(4, range(4))
    assert set(peel_min_degree(k44, 3).edges) == set(k44.edges)


def _peel_in_random_order(g, threshold, rng):
    alive = set(range(g.n))
    while True:
        low = [v for v in sorted(alive) if sum(1 for w, _ in g.adj[v] if w in alive) <= threshold]
        if not low:
            return alive
        alive.discard(rng.choice(low))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_peel_core_properties(seed, threshold):
    g = random_graph_case(seed, n_max=12, m_max=40)
    core = peel_min_degree(g, threshold)
    assert core.m == 0 or core.min_degree() > threshold
    again = peel_min_degree(core, threshold)
    assert set(again.edges) == set(core.edges)
    # deletion order does not matter
    alive = _peel_in_random_order(g, threshold, random.Random(seed))
    assert alive == core_vertices(g, threshold)


def test_verify_certificate_examples(triangle, c4_alternating):
    assert verify_certificate(triangle, RainbowCycleCertificate((0, 1, 2), (0, 1, 2)))
    cert = RainbowCycleCertificate((0, 1, 2, 3), (0, 1, 0, 1))
    assert certificate_defect(c4_alternating, cert) == "repeated_color"
    assert certificate_defect(c4_alternating, RainbowCycleCertificate((0, 2, 1), (0, 1, 0))) == "missing_edge"
    assert certificate_defect(triangle, RainbowCycleCertificate((0, 1, 2), (0, 1, 1))) == "wrong_color"
    assert certificate_defect(triangle, RainbowCycleCertificate((0, 1), (0, 0))) == "too_short"


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 9), min_size=3, max_size=7))
def test_verify_matches_naive_checker(seed, vertices):
    g = random_graph_case(seed)
    vertices = [v % g.n for v in vertices]
    cert = RainbowCycleCertificate.from_vertices(g, vertices)
    colors = tuple(-1 if c is None else c for c in cert.colors)
    cert = RainbowCycleCertificate(cert.vertices, colors)
    assert verify_certificate(g, cert) == naive_is_rainbow_cycle(g, cert.vertices, cert.colors)


def test_triangle_graphs_always_have_rainbow_cycle():
    for seed in range(200):
        g = random_graph_case(seed, n_max=9, m_max=25)
        has_triangle = any(
            g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
            for a, b, c in itertools.combinations(range(g.n), 3)
        )
        if has_triangle:
            cert = shortest_rainbow_cycle(g)
            assert cert is not None and len(cert) == 3


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 150), max_size=40), st.lists(st.integers(0, 150), max_size=40))
def test_color_set_backends_agree(xs, ys):
    for backend in ("mask", "set"):
        a = ColorSet(xs, backend=backend)
        b = ColorSet(ys, backend=backend)
        assert list(a) == sorted(set(xs))
        assert len(a) == len(set(xs))
        assert a.isdisjoint(b) == set(xs).isdisjoint(ys)
        for x in range(151):
            assert (x in a) == (x in set(xs))
    assert ColorSet(num_colors=64).backend == "mask"
    assert ColorSet(num_colors=65).backend == "set"
    assert ColorSet(xs, backend="mask") == ColorSet(xs, backend="set")
