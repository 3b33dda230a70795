"""Extend-Coloring: sparsify the types, split by color pair, recurse, merge.

After Sparsify-Types every fan's type lives inside one pair script-C_k,
and the subgraphs G_k (edges colored in script-C_k plus the uncolored
edges of the pair's fans) are pairwise edge-disjoint, so the eta
subproblems are independent: each is rebased to the palette 1..2r,
solved recursively, and its colors translated back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coloring import PartialColoring
from .graph import Graph
from .separable import SeparableCollection, UFan
from .small import color_small
from .sparsify import (ColorPartition, SparsifyError, classify_fan,
                       sparsify_types)

__all__ = ["Subproblem", "extend_coloring", "recursion_depth", "build_subproblems"]


def recursion_depth(mu: int, eta: int) -> int:
    """max(ceil(log_eta(mu / (10*eta))), 0): recursion depth bound."""
    d = 0
    t = 10 * eta
    while t < mu:
        t *= eta
        d += 1
    return d


@dataclass
class Subproblem:
    k: int
    graph: Graph                    # edge ids local, parent ids attached
    chi: PartialColoring            # palette rebased to 1..2r
    coll: SeparableCollection
    offset: int                     # parent color = local color + offset


def build_subproblems(g: Graph, chi: PartialColoring,
                      coll: SeparableCollection,
                      part: ColorPartition) -> list[Subproblem]:
    """Materialize the eta edge-disjoint palette-restricted instances."""
    two_r = 2 * part.r
    colors = np.asarray(chi.colors_snapshot(), dtype=np.int64)

    fans_by_k: dict[int, list[UFan]] = {}
    for f in coll:
        cls = classify_fan(f, part)
        if not cls.social:
            raise SparsifyError("subproblems need a sparsified collection")
        k = cls.a if cls.kind == "aligned" else part.pair_of_block(cls.a)
        fans_by_k.setdefault(k, []).append(f)

    subs: list[Subproblem] = []
    for k in range(1, part.eta + 1):
        fans = fans_by_k.get(k, [])
        if not fans:
            continue
        offset = (2 * k - 2) * part.r
        in_pair = (colors > offset) & (colors <= offset + two_r)
        ids = set(np.nonzero(in_pair)[0].tolist())
        for f in fans:
            ids.add(f.ev)
            ids.add(f.ew)
        id_arr = np.fromiter(sorted(ids), dtype=np.int64, count=len(ids))
        sub_g = Graph(g.n, g.u[id_arr], g.v[id_arr], parent_edge_ids=id_arr,
                      _trusted=True)
        local = {int(pe): i for i, pe in enumerate(id_arr)}
        sub_colors = [int(colors[pe]) - offset if colors[pe] else 0
                      for pe in id_arr.tolist()]
        sub_chi = PartialColoring(sub_g, two_r, initial=sub_colors)
        sub_coll = SeparableCollection(sub_chi)
        for f in sorted(fans, key=lambda f: f.key()):
            nf = UFan(f.u, f.v, f.w, f.cu - offset, f.cv - offset,
                      f.cw - offset, local[f.ev], local[f.ew])
            if not sub_coll.insert(nf):
                raise AssertionError("fan did not transfer to its subproblem")
        subs.append(Subproblem(k=k, graph=sub_g, chi=sub_chi,
                               coll=sub_coll, offset=offset))
    return subs


def extend_coloring(g: Graph, chi: PartialColoring, coll: SeparableCollection,
                    eta: int, _depth: int = 0, stats: dict | None = None,
                    trace=None) -> int:
    """Extend chi to >= ceil(lambda / 100^(depth+1)) uncolored edges.

    Consumes the collection (its fans are activated or dissolved); chi is
    modified in place, colored edges only ever gaining colors.
    """
    if eta < 10:
        raise SparsifyError(f"eta must be at least 10, got {eta}")
    lam = len(coll)
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), _depth)
    if lam == 0:
        return 0
    if chi.mu <= 10 * eta:
        return color_small(g, chi, coll)

    part = sparsify_types(g, chi, coll, eta, trace=trace)
    subs = build_subproblems(g, chi, coll, part)
    colored = 0
    merged = np.asarray(chi.colors_snapshot(), dtype=np.int64)
    for sp in subs:
        colored += extend_coloring(sp.graph, sp.chi, sp.coll, eta,
                                   _depth=_depth + 1, stats=stats,
                                   trace=trace)
        sub_colors = np.asarray(sp.chi.colors_snapshot(), dtype=np.int64)
        translated = np.where(sub_colors > 0, sub_colors + sp.offset, 0)
        merged[sp.graph.parent_edge_ids] = translated
    from .sparsify import _replace_colors
    _replace_colors(chi, merged)

    depth = recursion_depth(chi.mu, eta)
    need = -(-lam // 100 ** (depth + 1))
    if colored < need:
        raise AssertionError(
            f"extend_coloring colored {colored} < ceil({lam}/100^{depth + 1})")
    return colored
