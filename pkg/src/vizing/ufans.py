"""Build a separable collection from a set of uncolored edges.

Given lambda uncolored edges, either extend the coloring to a constant
fraction of them or park a constant fraction as a separable collection of
u-fans.  Strategy: anchor each uncolored edge at one endpoint; two edges at
one center become a u-fan when their (possibly fan-rotated) leaves share an
available color; everything else is colored by a collection-aware classical
extension (fan rotation plus at most one path flip), which always succeeds.
Every original edge ends up colored or inside a surviving fan, so
extended + 2|U| = lambda and max(extended, |U|) >= ceil(lambda/16).

Color choices respect the collection (drawn from the available-unassigned
sets); where the classical fallback must take an assigned color it first
deletes the owning fan and re-queues that fan's edges for extension, so the
collection is never silently broken.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .coloring import ColoringError, PartialColoring
from .graph import Graph
from .separable import SeparableCollection, UFan, initialize

__all__ = ["BuildOutcome", "build_ufans", "RATIO_DIVISOR"]

RATIO_DIVISOR = 16  # the concrete Omega(lambda) constant c1


@dataclass
class BuildOutcome:
    tag: str                      # "extended" | "built"
    extended_count: int
    collection: SeparableCollection

    @property
    def threshold(self) -> int:
        return -(-self._lam // RATIO_DIVISOR)

    _lam: int = 0


def build_ufans(g: Graph, chi: PartialColoring, uncolored_edges) -> BuildOutcome:
    edges = sorted(set(int(e) for e in uncolored_edges))
    for e in edges:
        if chi.color_of(e):
            raise ColoringError(f"edge {e} in the uncolored set is colored")
    lam = len(edges)
    coll = initialize(g, chi)
    before = chi.uncolored_count()
    if lam == 0:
        out = BuildOutcome("extended", 0, coll)
        out._lam = 0
        return out

    if getattr(chi.kern, "backend", "py") == "cy":
        return _build_native(g, chi, coll, edges, lam, before)

    pend = {}
    for e in edges:
        a, b = g.endpoints(e)
        pend[a] = pend.get(a, 0) + 1
        pend[b] = pend.get(b, 0) + 1
    buckets: dict[int, list[int]] = {}
    for e in edges:
        a, b = g.endpoints(e)
        anchor = a if (pend[a], -a) >= (pend[b], -b) else b
        buckets.setdefault(anchor, []).append(e)

    singles: deque[int] = deque()
    for u in sorted(buckets):
        es = buckets[u]
        i = 0
        while i + 1 < len(es):
            _try_pair(g, chi, coll, u, es[i], es[i + 1], singles)
            i += 2
        if i < len(es):
            singles.append(es[i])

    while singles:
        e = singles.popleft()
        if chi.color_of(e):
            continue
        _extend_one(g, chi, coll, e, singles)

    extended = before - chi.uncolored_count()
    if extended + 2 * len(coll) != lam:
        raise AssertionError("build accounting broken: "
                             f"{extended} + 2*{len(coll)} != {lam}")
    need = -(-lam // RATIO_DIVISOR)
    tag = "built" if len(coll) >= max(need, 1) else "extended"
    out = BuildOutcome(tag, extended, coll)
    out._lam = lam
    return out


def _build_native(g, chi, coll, edges, lam, before) -> BuildOutcome:
    """Compiled twin: the kernel runs the whole pass and returns fan records."""
    from . import _speedups

    records = _speedups.repair_pass(chi.kern, edges)
    for rec in records.tolist():
        u, v, w, cu, cv, cw, ev, ew = rec
        if not coll.insert(UFan(u, v, w, cu, cv, cw, ev, ew)):
            raise AssertionError("native fan record failed separable insert")
    extended = before - chi.uncolored_count()
    if extended + 2 * len(coll) != lam:
        raise AssertionError("build accounting broken: "
                             f"{extended} + 2*{len(coll)} != {lam}")
    need = -(-lam // RATIO_DIVISOR)
    tag = "built" if len(coll) >= max(need, 1) else "extended"
    out = BuildOutcome(tag, extended, coll)
    out._lam = lam
    return out


# -- shared plumbing ---------------------------------------------------------


def _claim(chi, coll, x, c, queue) -> None:
    """Make color c assignable at x: evict the fan holding it, if any."""
    f = coll.find_ufan(x, c)
    if f is not None:
        coll.delete(f)
        queue.append(f.ev)
        queue.append(f.ew)


def _rotate(chi, coll, slot, leaves, t, queue) -> None:
    """Shift the uncolored slot from position 0 to position t of the fan."""
    for i in range(1, t + 1):
        c = chi.color_of(slot[i])
        chi.set_color(slot[i], None)
        _claim(chi, coll, leaves[i - 1], c, queue)
        chi.set_color(slot[i - 1], c)


# -- pairing two uncolored edges at a center into a u-fan ----------------------


def _pick_center_color(kern, u, beta):
    for c in kern.cbar_trunc(u):
        if c != beta:
            return c
    return None


def _try_pair(g, chi, coll, u, e1, e2, singles) -> None:
    """Form a u-fan centered at u from uncolored e1=(u,v), e2=(u,w).

    Looks for an available color shared by w and some leaf reachable from v
    by fan rotation; an opportunistic direct extension of e1 is taken when a
    rotation target color is free at the center.  On failure both edges go
    to the classical-extension queue; nothing is mutated in that case until
    a rotation has committed.
    """
    kern = chi.kern
    v, w = g.other(e1, u), g.other(e2, u)

    leaves = [v]
    slot = [e1]
    grown: set[int] = set()
    for _ in range(kern.degree(u) + 2):
        yt = leaves[-1]
        stop = None
        grow = None
        for c in kern.cbar_trunc(yt):
            if yt != w and kern.is_available(w, c):
                cu = _pick_center_color(kern, u, c)
                if cu is not None:
                    t = len(slot) - 1
                    _rotate(chi, coll, slot, leaves, t, singles)
                    f = UFan(u, yt, w, cu, c, c, slot[t], e2)
                    if not coll.insert(f):
                        raise AssertionError("separable insert failed unexpectedly")
                    return
            if stop is None and kern.is_missing(u, c) and not kern.cu_marked(u, c):
                stop = c
            if grow is None and c not in grown and not kern.is_missing(u, c):
                grow = c
        if stop is not None:
            t = len(slot) - 1
            _rotate(chi, coll, slot, leaves, t, singles)
            _claim(chi, coll, leaves[t], stop, singles)
            chi.set_color(slot[t], stop)
            singles.append(e2)
            return
        if grow is None:
            break
        grown.add(grow)
        nxt = kern.edge_at(u, grow)
        leaves.append(g.other(nxt, u))
        slot.append(nxt)
    singles.append(e1)
    singles.append(e2)


# -- classical extension, collection-aware --------------------------------------


def _extend_one(g, chi, coll, e, queue) -> None:
    """Color the uncolored edge e (textbook fan + at most one flip)."""
    kern = chi.kern
    a, b = g.endpoints(e)
    lo, hi = (a, b) if kern.trunc(a) <= kern.trunc(b) else (b, a)
    c = kern.common_free(a, b)
    if c:
        chi.set_color(e, c)
        return

    x, y0 = lo, hi  # anchor at the endpoint with the smaller palette window
    leaves = [y0]
    slot = [e]
    chosen: dict[int, int] = {}
    while True:
        yt = leaves[-1]
        beta = kern.miss_min(yt)
        if kern.is_missing(x, beta):
            t = len(slot) - 1
            _rotate(chi, coll, slot, leaves, t, queue)
            _claim(chi, coll, x, beta, queue)
            _claim(chi, coll, yt, beta, queue)
            chi.set_color(slot[t], beta)
            return
        if beta in chosen:
            _finish_two_leaf(g, chi, coll, x, leaves, slot, chosen[beta], beta, queue)
            return
        chosen[beta] = len(leaves) - 1
        nxt = kern.edge_at(x, beta)
        leaves.append(g.other(nxt, x))
        slot.append(nxt)


def _finish_two_leaf(g, chi, coll, x, leaves, slot, i, beta, queue) -> None:
    """Vizing's two-chain case: leaves[i] and leaves[-1] both miss beta.

    At most one of their {alpha,beta}-paths ends at x (x misses alpha, so
    only one maximal path of that type touches x at all); rotating the slot
    to the chosen leaf does not disturb that leaf's path.
    """
    kern = chi.kern
    alpha = kern.miss_min(x)
    end_i, _ = kern.walk(leaves[i], alpha, beta)
    t = i if end_i != x else len(leaves) - 1
    _rotate(chi, coll, slot, leaves, t, queue)
    path = chi.walk_alternating_path(leaves[t], alpha, beta)
    if path.y == x:
        raise AssertionError("both Vizing chains end at the anchor")
    for f in chi.flip_path(path, collection=coll):
        if coll.delete(f):
            queue.append(f.ev)
            queue.append(f.ew)
    _claim(chi, coll, x, alpha, queue)
    _claim(chi, coll, leaves[t], alpha, queue)
    chi.set_color(slot[t], alpha)
