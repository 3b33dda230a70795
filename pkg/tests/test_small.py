import pytest

from helpers import sparsify_state
from vizing import load_edge_list, init_coloring, validate_coloring
from vizing.separable import SeparableCollection, UFan
from vizing.small import color_small


def test_single_fan_always_colors():
    g, chi, coll = sparsify_state(1, mu=20, seed=4)
    assert len(coll) == 1
    assert color_small(g, chi, coll) == 1


def test_disjoint_same_type_fans_all_activate():
    # two vertex-disjoint stars, same type, nothing to interfere
    g = load_edge_list("1 2\n1 3\n4 5\n4 6")
    chi = init_coloring(g, 12)
    coll = SeparableCollection(chi)
    assert coll.insert(UFan(1, 2, 3, 1, 2, 2, 0, 1))
    assert coll.insert(UFan(4, 5, 6, 1, 2, 2, 2, 3))
    assert color_small(g, chi, coll) == 2
    assert chi.uncolored_count() == 2  # one leaf edge per fan stays open
    assert validate_coloring(g, chi).clean


def test_empty_collection():
    g, chi, coll = sparsify_state(1, mu=20, seed=4)
    for f in list(coll):
        coll.delete(f)
    assert color_small(g, chi, coll) == 0


def test_guarantee_fuzz():
    for t in range(30):
        lam_want = [2, 9, 35, 120, 260][t % 5]
        g, chi, coll = sparsify_state(lam_want, mu=[20, 60, 100][t % 3],
                                      seed=2000 + t)
        lam = len(coll)
        before = chi.uncolored_count()
        colored = color_small(g, chi, coll)
        assert colored >= -(-lam // 100)
        assert before - chi.uncolored_count() == colored
        assert validate_coloring(g, chi).clean
        assert not coll.validator_errors()
        # residual fans after the rounds: at most half survive
        assert len(coll) <= lam // 2 + 1
