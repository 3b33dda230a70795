import pytest

from helpers import adversarial_sparsify_state, sparsify_state
from vizing import validate_coloring
from vizing.extend import (build_subproblems, extend_coloring,
                           recursion_depth)
from vizing.sparsify import SparsifyError, classify_fan, sparsify_types


def test_depth_formula():
    assert recursion_depth(100, 10) == 0      # mu <= 10*eta
    assert recursion_depth(101, 10) == 1
    assert recursion_depth(10**4, 10) == 2    # ceil(log10(100)) = 2
    assert recursion_depth(10**4 + 1, 10) == 3
    assert recursion_depth(20, 10) == 0


def test_eta_guard():
    g, chi, coll = sparsify_state(3, mu=110, seed=0)
    with pytest.raises(SparsifyError):
        extend_coloring(g, chi, coll, 9)


def test_base_case_calls_color_small():
    g, chi, coll = sparsify_state(12, mu=100, seed=5)
    lam = len(coll)
    stats = {}
    colored = extend_coloring(g, chi, coll, 10, stats=stats)
    assert stats["max_depth"] == 0
    assert colored >= -(-lam // 100)
    assert validate_coloring(g, chi).clean


def test_subproblems_edge_disjoint_and_valid():
    g, chi, coll = sparsify_state(60, mu=150, seed=9)
    part = sparsify_types(g, chi, coll, 10)
    subs = build_subproblems(g, chi, coll, part)
    assert subs
    seen = set()
    for sp in subs:
        ids = set(sp.graph.parent_edge_ids.tolist())
        assert not (ids & seen)
        seen |= ids
        assert validate_coloring(sp.graph, sp.chi).clean
        assert not sp.coll.validator_errors()
        assert sp.chi.mu == 2 * part.r
        for f in sp.coll:
            cls = classify_fan(f, part)  # against the parent partition
        # sub-palette colors stay in range
        assert sp.chi.max_color_used() <= sp.chi.mu
        for e in range(sp.graph.m):
            pe = int(sp.graph.parent_edge_ids[e])
            pc = chi.color_of(pe)
            sc = sp.chi.color_of(e)
            assert (pc == 0 and sc == 0) or pc == sc + sp.offset


def test_recursive_case_guarantee():
    for t in range(6):
        g, chi, coll = sparsify_state([40, 90, 200][t % 3], mu=150,
                                      seed=40 + t)
        lam = len(coll)
        before = chi.uncolored_count()
        stats = {}
        colored = extend_coloring(g, chi, coll, 10, stats=stats)
        depth = recursion_depth(150, 10)
        assert depth == 1
        assert stats["max_depth"] <= depth
        assert colored >= -(-lam // 100 ** (depth + 1))
        assert before - chi.uncolored_count() == colored
        assert validate_coloring(g, chi).clean


def test_two_level_recursion():
    # mu big enough that depth(mu, 10) = 2
    g, chi, coll = adversarial_sparsify_state(3, seed=13, mu=1100)
    assert chi.mu >= 1100
    lam = len(coll)
    stats = {}
    colored = extend_coloring(g, chi, coll, 10, stats=stats)
    assert stats["max_depth"] <= recursion_depth(chi.mu, 10)
    assert stats["max_depth"] >= 1
    assert colored >= -(-lam // 100 ** (recursion_depth(chi.mu, 10) + 1))
    assert validate_coloring(g, chi).clean
