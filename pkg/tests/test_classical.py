import random

import pytest

from vizing import (gen_random_graph, gen_random_regular, load_edge_list,
                    validate_coloring)
from vizing.classical import brute_min_edge_colors, classical_color


def check(g):
    chi = classical_color(g)
    rep = validate_coloring(g, chi)
    assert rep.clean and rep.uncolored == 0
    assert chi.max_color_used() <= g.max_degree + 1
    return chi


def test_k4():
    check(gen_random_graph(4, 6, 7))


def test_star_needs_exactly_delta():
    g = load_edge_list("1 2\n1 3\n1 4\n1 5\n1 6")
    chi = check(g)
    assert chi.max_color_used() == 5


def test_fuzz_sweep():
    rnd = random.Random(3)
    for t in range(200):
        n = rnd.randint(4, 80)
        m = rnd.randint(1, min(4 * n, n * (n - 1) // 2))
        check(gen_random_graph(n, m, t))
    for t in range(30):
        d = rnd.choice([3, 5, 8, 13])
        n = rnd.randint(d + 1, 60)
        if n * d % 2:
            n += 1
        check(gen_random_regular(n, d, t))


def test_brute_triangle_is_class_two():
    assert brute_min_edge_colors(load_edge_list("1 2\n2 3\n3 1")) == 3


def test_brute_even_cycle_is_class_one():
    assert brute_min_edge_colors(load_edge_list("1 2\n2 3\n3 4\n4 1")) == 2


def test_brute_size_guard():
    g = gen_random_graph(10, 17, 0)
    with pytest.raises(ValueError):
        brute_min_edge_colors(g)


def test_brute_petersen_minus_vertex():
    # Petersen with vertex 10 deleted: 12 edges; chi' stays 4 (it contains
    # odd cycles forcing 4 at Delta=3... verified by the exhaustive search
    # against the Vizing window)
    pet = ("1 2\n2 3\n3 4\n4 5\n5 1\n6 8\n8 10\n10 7\n7 9\n9 6\n"
           "1 6\n2 7\n3 8\n4 9\n5 10")
    edges = [ln for ln in pet.splitlines() if "10" not in ln.split()]
    g = load_edge_list("\n".join(edges))
    assert g.m == 12
    val = brute_min_edge_colors(g)
    assert g.max_degree <= val <= g.max_degree + 1
    assert val == 4


def test_brute_within_vizing_window_fuzz():
    rnd = random.Random(9)
    for t in range(40):
        n = rnd.randint(3, 9)
        m = rnd.randint(1, min(16, n * (n - 1) // 2))
        g = gen_random_graph(n, m, 7000 + t)
        val = brute_min_edge_colors(g)
        assert g.max_degree <= val <= g.max_degree + 1
        chi = check(g)
        assert chi.max_color_used() >= val
