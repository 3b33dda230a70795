"""Classical (Delta+1) edge coloring and tiny-graph exhaustive oracles.

Deliberately self-contained: this module re-implements its own color
tables, missing-color bitmasks, fan rotation and path flipping so that it
shares no code with the main pipeline's kernel/path/fan machinery and can
serve as an independent cross-check (and as the bench baseline).
"""

from __future__ import annotations

from .coloring import ColoringError, PartialColoring, init_coloring
from .graph import Graph

__all__ = ["classical_color", "brute_min_edge_colors"]


class _State:
    """Color tables for the classical colorer (own code, own layout)."""

    __slots__ = ("mu", "where", "free", "colors", "u", "v")

    def __init__(self, g: Graph, mu: int):
        self.mu = mu
        self.u = g.u
        self.v = g.v
        self.where = {}                      # (x, c) -> edge id
        full = (1 << mu) - 1
        self.free = [full] * (g.n + 1)       # bitmask over colors 1..mu
        self.colors = [0] * g.m

    def assign(self, e: int, c: int) -> None:
        a, b = int(self.u[e]), int(self.v[e])
        self.where[(a, c)] = e
        self.where[(b, c)] = e
        self.free[a] &= ~(1 << (c - 1))
        self.free[b] &= ~(1 << (c - 1))
        self.colors[e] = c

    def unassign(self, e: int) -> int:
        c = self.colors[e]
        a, b = int(self.u[e]), int(self.v[e])
        del self.where[(a, c)]
        del self.where[(b, c)]
        self.free[a] |= 1 << (c - 1)
        self.free[b] |= 1 << (c - 1)
        self.colors[e] = 0
        return c

    def min_free(self, x: int) -> int:
        bits = self.free[x]
        return (bits & -bits).bit_length()

    def has_free(self, x: int, c: int) -> bool:
        return bool(self.free[x] >> (c - 1) & 1)

    def swap_chain(self, start: int, a: int, b: int) -> int:
        """Invert the maximal {a,b}-chain from `start`; return its far end.

        Precondition: at least one of a, b free at start.
        """
        fa = self.has_free(start, a)
        fb = self.has_free(start, b)
        if fa and fb:
            return start
        cur = a if fb else b
        x = start
        chain = []
        while (x, cur) in self.where:
            e = self.where[(x, cur)]
            chain.append(e)
            ue, ve = int(self.u[e]), int(self.v[e])
            x = ve if x == ue else ue
            cur = a + b - cur
        flipped = [a + b - self.colors[e] for e in chain]
        for e in chain:
            self.unassign(e)
        for e, c in zip(chain, flipped):
            self.assign(e, c)
        return x


def _color_edge(st: _State, e: int) -> None:
    a, b = int(st.u[e]), int(st.v[e])
    both = st.free[a] & st.free[b]
    if both:
        st.assign(e, (both & -both).bit_length())
        return
    # anchor at the endpoint of smaller degree-ish: fewer used colors
    x, y0 = (a, b) if bin(st.free[a]).count("1") >= bin(st.free[b]).count("1") else (b, a)

    leaves = [y0]
    slot = [e]                       # slot[i] is the edge (x, leaves[i])
    chosen: dict[int, int] = {}      # candidate color -> index of leaf that picked it
    while True:
        yt = leaves[-1]
        beta = st.min_free(yt)
        if st.has_free(x, beta):
            _rotate(st, slot, len(slot) - 1)
            st.assign(slot[-1], beta)
            return
        if beta in chosen:
            _two_leaf_finish(st, x, leaves, slot, chosen[beta], beta)
            return
        chosen[beta] = len(leaves) - 1
        nxt = st.where[(x, beta)]
        leaves.append(int(st.v[nxt]) if x == int(st.u[nxt]) else int(st.u[nxt]))
        slot.append(nxt)


def _rotate(st: _State, slot: list[int], t: int) -> None:
    """Shift the uncolored slot from position 0 to position t."""
    for i in range(1, t + 1):
        c = st.unassign(slot[i])
        st.assign(slot[i - 1], c)


def _two_leaf_finish(st: _State, x: int, leaves, slot, i: int, beta: int) -> None:
    """Vizing's two-path case: leaves[i] and leaves[-1] both miss beta.

    In the current coloring at most one of their {alpha,beta}-chains ends
    at x (x has a unique beta-edge and misses alpha, so only one maximal
    chain touches x at all).
    """
    alpha = st.min_free(x)
    k = len(leaves) - 1
    end = _chain_end(st, leaves[i], alpha, beta)
    if end != x:
        _rotate(st, slot, i)
        far = st.swap_chain(leaves[i], alpha, beta)
        assert far == end
        st.assign(slot[i], alpha)
        return
    _rotate(st, slot, k)
    far = st.swap_chain(leaves[k], alpha, beta)
    assert far != x, "both Vizing chains end at the anchor"
    st.assign(slot[k], alpha)


def _chain_end(st: _State, start: int, a: int, b: int) -> int:
    fa = st.has_free(start, a)
    fb = st.has_free(start, b)
    if fa and fb:
        return start
    cur = a if fb else b
    x = start
    while (x, cur) in st.where:
        e = st.where[(x, cur)]
        ue, ve = int(st.u[e]), int(st.v[e])
        x = ve if x == ue else ue
        cur = a + b - cur
    return x


def classical_color(g: Graph) -> PartialColoring:
    """Textbook Vizing-fan coloring: proper, total, at most Delta+1 colors."""
    from . import kernel as _kernel
    mu = g.max_degree + 1 if g.m else 0
    if _kernel.HAVE_SPEEDUPS and g.m:
        from . import _speedups
        colors = _speedups.classical_color_core(g.n, mu, g.u, g.v)
        return PartialColoring(g, mu, kern=_kernel.ColorKernel(
            g.n, mu, g.u, g.v, g.degrees(), colors))
    st = _State(g, mu)
    for e in range(g.m):
        _color_edge(st, e)
    return init_coloring(g, mu, {e: c for e, c in enumerate(st.colors)})


def brute_min_edge_colors(g: Graph, limit: int = 16) -> int:
    """Exhaustive chromatic index for tiny graphs (m <= 16)."""
    if g.m > limit:
        raise ValueError(f"brute force limited to m <= {limit}, got m = {g.m}")
    if g.m == 0:
        return 0
    # order edges to keep the search tree shallow: consecutive edges share
    # vertices when possible
    order = sorted(range(g.m), key=lambda e: (min(g.endpoints(e)), max(g.endpoints(e))))

    def feasible(k: int) -> bool:
        used = [0] * (g.n + 1)

        def rec(idx: int) -> bool:
            if idx == len(order):
                return True
            e = order[idx]
            a, b = g.endpoints(e)
            avail = ~(used[a] | used[b]) & ((1 << k) - 1)
            while avail:
                low = avail & -avail
                avail ^= low
                used[a] |= low
                used[b] |= low
                if rec(idx + 1):
                    return True
                used[a] &= ~low
                used[b] &= ~low
            return False

        return rec(0)

    k = g.max_degree
    while not feasible(k):
        k += 1
        if k > g.max_degree + 1:
            raise AssertionError("Vizing bound violated by brute force")
    return k
