import itertools

import pytest

from rainbow_cycles import (
    brute_force_enumerate,
    build_graph,
    check_proper,
    gen_cayley_bk,
    gen_hypercube,
    has_rainbow_c2k,
    is_bk_star,
    is_rainbow_acyclic,
)
from rainbow_cycles.colored_graph import ImproperColoring
from rainbow_cycles.detect import InstanceTooLarge
from rainbow_cycles.harness import cayley_equivalence_sweep, exact_f, hypercube_f_lower_bound_check


def naive_f(n):
    """Every labeled graph, every assignment of colors 0..m-1 to its edges."""
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(len(pairs), -1, -1):
        for edges in itertools.combinations(pairs, m):
            for colors in itertools.product(range(m), repeat=m):
                try:
                    g = build_graph(n, [(u, v, c) for (u, v), c in zip(edges, colors)])
                except ImproperColoring:
                    continue
                if not brute_force_enumerate(g, max(3, n)):
                    return m
    return 0


@pytest.mark.parametrize("n,expected", [(3, 2), (4, 4), (5, 6)])
def test_exact_f_small(n, expected):
    res = exact_f(n)
    assert res.f_value == expected
    assert res.witness.m == expected
    assert check_proper(res.witness) == [] and is_rainbow_acyclic(res.witness)


def test_exact_f_witness_shapes():
    c4 = exact_f(4).witness
    assert all(c4.degree(v) == 2 for v in range(4))
    k23 = exact_f(5).witness
    assert sorted(k23.degree(v) for v in range(5)) == [2, 2, 2, 3, 3]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_exact_f_matches_naive_enumeration(n):
    assert exact_f(n).f_value == naive_f(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_triangle_skip_does_not_change_answer(n):
    assert exact_f(n, skip_triangles=False).f_value == exact_f(n).f_value


def test_exact_f_six_matches_mantel_bound():
    # a 10-edge graph on 6 vertices has a triangle, so 9 is the ceiling
    res = exact_f(6)
    assert res.f_value == 9
    assert is_rainbow_acyclic(res.witness)


def test_exact_f_monotone_and_hypercube_consistent():
    values = [exact_f(n).f_value for n in range(0, 6)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[4] == gen_hypercube(2).m


def test_exact_f_guard():
    with pytest.raises(InstanceTooLarge):
        exact_f(7)


def test_hypercube_rows():
    rows = hypercube_f_lower_bound_check(4)
    assert [(r.n, r.edges, r.bound) for r in rows[1:]] == [(4, 4, 4.0), (8, 12, 12.0), (16, 32, 32.0)]
    assert all(r.ok for r in rows)
    with pytest.raises(ValueError):
        hypercube_f_lower_bound_check(8)


def test_sweep_examples():
    for modulus, A, bk in [(5, (0, 1, 2), True), (10, (0, 1, 2, 3), False), (2, (0,), True)]:
        assert is_bk_star(modulus, A, 2) == bk
        assert (has_rainbow_c2k(gen_cayley_bk(modulus, A), 2) is None) == bk


def test_sweep_small_range_is_clean():
    report = cayley_equivalence_sweep(7, 4)
    assert report.ok and report.checked > 0
    assert report.to_dict()["with_witness"] == report.checked - report.bk_star
