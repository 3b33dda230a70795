"""Color-Small: activate fans of the most common type, round after round.

With a palette of mu colors there are fewer than mu^2 types, so the most
common type covers at least a 1/mu^2 fraction of the collection; activating
those fans flips only paths of that one type, and each activation can
change the type of at most one other fan.  After mu^2 rounds at most half
the fans remain, and since every removal is an activation or the single
fan an activation retyped, at least a quarter of the collection got its
edge colored.
"""

from __future__ import annotations

from .coloring import PartialColoring
from .graph import Graph
from .separable import SeparableCollection

__all__ = ["color_small"]


def color_small(g: Graph, chi: PartialColoring,
                coll: SeparableCollection) -> int:
    """Extend chi to at least ceil(len(coll)/100) uncolored edges."""
    lam = len(coll)
    if lam == 0:
        return 0
    colored = 0
    rounds = chi.mu * chi.mu
    for _ in range(rounds):
        if not coll:
            break
        counts: dict[tuple[int, int], int] = {}
        for f in coll:
            t = (f.cu, f.cv) if f.cu < f.cv else (f.cv, f.cu)
            counts[t] = counts.get(t, 0) + 1
        tstar = min(counts, key=lambda t: (-counts[t], t))
        snapshot = {key: (f.cu, f.cv, f.cw)
                    for key, f in coll.fans.items()}
        targets = [f for f in coll
                   if ((f.cu, f.cv) if f.cu < f.cv else (f.cv, f.cu)) == tstar]
        targets.sort(key=lambda f: f.key())
        for f in targets:
            if f not in coll:
                continue
            if (f.cu, f.cv, f.cw) != snapshot[f.key()]:
                # an earlier activation this round retyped (or damaged) it
                coll.delete(f)
                continue
            coll.activate_ufan(f)
            colored += 1
        for key, f in list(coll.fans.items()):
            if key in snapshot and (f.cu, f.cv, f.cw) != snapshot[key]:
                coll.delete(f)
    need = -(-lam // 100)
    if colored < need:
        raise AssertionError(
            f"color_small extended {colored} < ceil({lam}/100) edges")
    return colored
