import random

import pytest

from helpers import random_partial
from vizing import (ColoringError, gen_random_graph, gen_random_regular,
                    init_coloring, load_edge_list, validate_coloring)
from vizing.classical import classical_color
from vizing.ufans import RATIO_DIVISOR, build_ufans


def run_contract(g, chi, uncol):
    lam = len(uncol)
    before = chi.uncolored_count()
    out = build_ufans(g, chi, uncol)
    rep = validate_coloring(g, chi)
    assert rep.clean, rep.violations()[:3]
    assert chi.uncolored_count() <= before
    assert not out.collection.validator_errors()
    need = -(-lam // RATIO_DIVISOR)
    assert max(out.extended_count, len(out.collection)) >= need
    if out.tag == "built":
        assert len(out.collection) >= need
    else:
        assert out.extended_count >= need
    assert out.extended_count + 2 * len(out.collection) == lam
    return out


def test_single_edge_shared_missing_color():
    g = load_edge_list("1 2\n2 3")
    chi = init_coloring(g, 3, {1: 1})
    out = build_ufans(g, chi, [0])
    assert out.tag == "extended" and out.extended_count == 1


def test_two_edges_one_center_make_a_fan():
    g = load_edge_list("1 2\n1 3\n2 3\n2 4\n3 4")
    chi = init_coloring(g, 4, {2: 1, 3: 2, 4: 3})
    out = build_ufans(g, chi, [0, 1])
    assert out.tag == "built" and len(out.collection) == 1
    (f,) = list(out.collection)
    assert f.u == 1 and {f.v, f.w} == {2, 3} and f.cv == f.cw != f.cu


def test_rejects_colored_input_edge():
    g = load_edge_list("1 2\n2 3")
    chi = init_coloring(g, 3, {0: 1})
    with pytest.raises(ColoringError):
        build_ufans(g, chi, [0])


def test_matching_in_regular_graph():
    """The spec's flagship instance: an uncolored matching in an otherwise
    fully colored regular graph."""
    rnd = random.Random(5)
    for t in range(12):
        d = rnd.choice([4, 6, 8])
        n = rnd.randrange(d + 2, 80)
        if n * d % 2:
            n += 1
        g = gen_random_regular(n, d, t)
        chi = classical_color(g)
        base = init_coloring(g, d + 1,
                             {e: chi.color_of(e) for e in range(g.m)})
        # uncolor a matching
        used = set()
        matching = []
        for e in range(g.m):
            a, b = g.endpoints(e)
            if a not in used and b not in used:
                used.add(a)
                used.add(b)
                matching.append(e)
        for e in matching:
            base.set_color(e, None)
        run_contract(g, base, matching)


def test_fuzz_contract(rnd):
    for t in range(60):
        n = rnd.randint(6, 120)
        m = rnd.randint(n // 2, min(3 * n, n * (n - 1) // 2))
        g = gen_random_graph(n, m, t)
        mu = g.max_degree + 1
        chi, uncol = random_partial(g, mu, rnd.choice([0.05, 0.2, 0.5]), t)
        run_contract(g, chi, uncol)


def test_all_edges_uncolored():
    g = gen_random_graph(40, 90, 11)
    chi = init_coloring(g, g.max_degree + 1)
    run_contract(g, chi, list(range(g.m)))


def test_operation_count_budget():
    """Structure-op count stays within O((m + Delta*lambda) log Delta)."""
    import math
    rnd = random.Random(5)
    for t in range(25):
        n = rnd.randint(8, 140)
        m = rnd.randint(n // 2, min(3 * n, n * (n - 1) // 2))
        g = gen_random_graph(n, m, t)
        mu = g.max_degree + 1
        chi, uncol = random_partial(g, mu, rnd.choice([0.1, 0.4, 0.9]), t)
        lam = len(uncol)
        chi.kern.ops = 0
        build_ufans(g, chi, uncol)
        budget = 8 * ((g.m + g.max_degree * lam)
                      * (math.log2(max(g.max_degree, 2)) + 1)) + 64
        assert chi.kern.ops <= budget
