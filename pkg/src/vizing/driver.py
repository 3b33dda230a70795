"""End-to-end (Delta+1) coloring: Euler recursion plus palette repair.

vizing_color splits the graph into two half-degree subgraphs, colors them
recursively, lifts the two colorings onto disjoint palettes (at most
Delta+3 colors total), then repairs down to Delta+1: the two smallest
color classes are uncolored and the O(m/Delta) freed edges are re-colored
by repeated rounds of build_ufans + Extend-Coloring.
"""

from __future__ import annotations

import math

import numpy as np

from .classical import classical_color
from .coloring import ColoringError, PartialColoring, validate_coloring
from .graph import Graph, euler_partition
from .separable import SeparableCollection
from .extend import extend_coloring
from .ufans import build_ufans

__all__ = ["vizing_color", "repair_to_delta_plus_one", "repair_eta",
           "BASE_DELTA", "IterationCapExceeded"]

BASE_DELTA = 16       # below this the classical colorer is simpler and faster
CAP_SAFETY = 64


class IterationCapExceeded(AssertionError):
    """The repair loop ran past its bound; signals an implementation bug."""


def repair_eta(delta: int) -> int:
    """eta = 10 * ceil(2^sqrt(log2 delta)) used by the repair rounds."""
    return 10 * math.ceil(2 ** math.sqrt(math.log2(max(delta, 2))))


def _iteration_cap(delta: int, lam0: int) -> int:
    factor = math.ceil(100 ** math.sqrt(math.log2(max(delta, 2))))
    return 16 * factor * max(1, math.ceil(math.log2(lam0 + 2))) * CAP_SAFETY


def repair_to_delta_plus_one(g: Graph, chi: PartialColoring,
                             trace=None) -> PartialColoring:
    """Turn a proper total coloring with <= Delta+3 colors into Delta+1."""
    if chi.uncolored_count():
        raise ColoringError("repair needs a total coloring")
    rep = validate_coloring(g, chi)
    if not rep.clean:
        raise ColoringError(f"repair needs a proper coloring: {rep.violations()[:1]}")
    colors = np.asarray(chi.colors_snapshot(), dtype=np.int64)
    return _repair_array(g, colors, trace=trace)


def _repair_array(g: Graph, colors: np.ndarray, trace=None) -> PartialColoring:
    delta = g.max_degree
    palette = delta + 3
    if colors.size and int(colors.max()) > palette:
        raise ColoringError(f"more than Delta+3 = {palette} colors")
    sizes = np.bincount(colors, minlength=palette + 1)[1:palette + 1]
    order = sorted(range(1, palette + 1), key=lambda c: (int(sizes[c - 1]), c))
    drop = set(order[:2])
    keep = [c for c in range(1, palette + 1) if c not in drop and sizes[c - 1]]
    if len(keep) > delta + 1:
        raise ColoringError("dropping two classes left more than Delta+1 colors")
    rank = np.zeros(palette + 1, dtype=np.int64)
    for i, c in enumerate(sorted(keep), start=1):
        rank[c] = i
    new_colors = rank[colors]

    mu = delta + 1
    chi = PartialColoring(g, mu, initial=new_colors)
    lam0 = chi.uncolored_count()
    if lam0 == 0:
        return chi
    eta = repair_eta(delta)
    cap = _iteration_cap(delta, lam0)
    rounds = 0
    while chi.uncolored_count():
        rounds += 1
        if rounds > cap:
            raise IterationCapExceeded(
                f"repair exceeded {cap} rounds with "
                f"{chi.uncolored_count()} edges left")
        uncolored = chi.uncolored_edges()
        outcome = build_ufans(g, chi, uncolored)
        if outcome.tag == "built":
            extend_coloring(g, chi, outcome.collection, eta, trace=trace)
    return chi


def _color_recursive(g: Graph, stats, depth, trace) -> np.ndarray:
    """Recursion body returning just the color array (saves kernel builds)."""
    from . import kernel as _kernel
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), depth)
    if g.m == 0:
        return np.zeros(0, dtype=np.int32)
    delta = g.max_degree
    if delta <= BASE_DELTA:
        if _kernel.HAVE_SPEEDUPS and _kernel.active_backend() == "cy":
            from . import _speedups
            mu = delta + 1
            return np.asarray(
                _speedups.classical_color_core(g.n, mu, g.u, g.v),
                dtype=np.int32)
        return np.asarray(classical_color(g).colors_snapshot(), dtype=np.int32)

    g1, g2 = euler_partition(g)
    arr1 = _color_recursive(g1, stats, depth + 1, trace)
    k1 = int(arr1.max(initial=0))
    ids1 = g1.parent_edge_ids
    g1 = None
    arr2 = _color_recursive(g2, stats, depth + 1, trace)
    ids2 = g2.parent_edge_ids
    g2 = None
    colors = np.zeros(g.m, dtype=np.int32)
    colors[ids1] = arr1
    colors[ids2] = np.where(arr2 > 0, arr2 + k1, 0).astype(np.int32)
    del arr1, arr2, ids1, ids2
    used = np.unique(colors[colors > 0])
    if used.size > delta + 3:
        raise AssertionError("palette lift exceeded Delta+3 colors")
    rank = np.zeros(int(used.max(initial=0)) + 1, dtype=np.int32)
    rank[used] = np.arange(1, used.size + 1, dtype=np.int32)
    chi = _repair_array(g, rank[colors], trace=trace)
    return np.asarray(chi.colors_snapshot(), dtype=np.int32)


def vizing_color(g: Graph, stats: dict | None = None,
                 _depth: int = 0, trace=None) -> PartialColoring:
    """Proper total coloring of g with at most Delta+1 colors."""
    if stats is not None:
        stats["max_depth"] = max(stats.get("max_depth", 0), _depth)
    if g.m == 0:
        return PartialColoring(g, 0)
    delta = g.max_degree
    if delta <= BASE_DELTA:
        return classical_color(g)

    g1, g2 = euler_partition(g)
    arr1 = _color_recursive(g1, stats, _depth + 1, trace)
    k1 = int(arr1.max(initial=0))
    ids1 = g1.parent_edge_ids
    arr2 = _color_recursive(g2, stats, _depth + 1, trace)
    ids2 = g2.parent_edge_ids

    colors = np.zeros(g.m, dtype=np.int64)
    colors[ids1] = arr1
    colors[ids2] = np.where(arr2 > 0, arr2 + k1, 0)
    used = np.unique(colors[colors > 0])
    if used.size > delta + 3:
        raise AssertionError("palette lift exceeded Delta+3 colors")
    rank = np.zeros(int(used.max(initial=0)) + 1, dtype=np.int64)
    rank[used] = np.arange(1, used.size + 1)
    return _repair_array(g, rank[colors], trace=trace)
