"""Partial mu-colorings with per-vertex structures and path flipping.

A PartialColoring wraps the active kernel (compiled or pure Python) and
exposes the operations the algorithms are written against: proper color
assignment, maximal alternating-path walks, and the collection-aware
Flip-Path that keeps a separable collection separable while flipping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._pykernel import ColoringError
from . import kernel as _kernel
from .graph import Graph

__all__ = ["ColoringError", "AlternatingPath", "PartialColoring",
           "init_coloring", "validate_coloring", "ValidationReport",
           "dump_coloring", "load_coloring"]


@dataclass(frozen=True)
class AlternatingPath:
    """A maximal {alpha,beta}-path: edge sequence plus endpoints.

    Maximality means one of the two colors is missing at each endpoint;
    the length-0 path (x == y, no edges) is a legal, trivially maximal
    value used when both colors are missing at x.
    """

    alpha: int
    beta: int
    edges: tuple[int, ...]
    x: int
    y: int

    @property
    def colors(self) -> frozenset[int]:
        return frozenset((self.alpha, self.beta))

    def __len__(self) -> int:
        return len(self.edges)

    def prefix(self, i: int) -> tuple[int, ...]:
        return self.edges[:i]

    def endpoints(self) -> tuple[int, int]:
        return self.x, self.y


class PartialColoring:
    """Edge -> color map plus the per-vertex structures of the kernel."""

    __slots__ = ("graph", "mu", "kern")

    def __init__(self, graph: Graph, mu: int, kern=None, initial=None):
        if mu < 0:
            raise ColoringError("palette size must be nonnegative")
        self.graph = graph
        self.mu = mu
        if kern is not None:
            self.kern = kern
        else:
            self.kern = _kernel.ColorKernel(graph.n, mu, graph.u, graph.v,
                                            graph.degrees(), initial)

    # -- queries ---------------------------------------------------------

    def color_of(self, e: int) -> int:
        return self.kern.color(e)

    def colors_snapshot(self):
        return self.kern.colors_snapshot()

    def uncolored_count(self) -> int:
        return self.kern.uncolored_count()

    def uncolored_edges(self) -> list[int]:
        import numpy as np
        colors = np.asarray(self.kern.colors_snapshot())
        return np.nonzero(colors == 0)[0].tolist()

    def max_color_used(self) -> int:
        return self.kern.max_color_used()

    def phi(self, x: int, e: int) -> int:
        """phi_x(e): the color of an edge incident on x."""
        if x not in self.graph.endpoints(e):
            raise ColoringError(f"edge {e} not incident on vertex {x}")
        return self.kern.color(e)

    def phi_prime(self, x: int, c: int):
        """phi'_x(c): the incident edge colored c, or None."""
        e = self.kern.edge_at(x, c)
        return None if e < 0 else e

    def is_missing(self, x: int, c: int) -> bool:
        return self.kern.is_missing(x, c)

    def miss_trunc(self, x: int) -> list[int]:
        """miss(x) intersected with the deg(x)+1 smallest colors."""
        return self.kern.miss_trunc(x)

    # -- mutation ---------------------------------------------------------

    def set_color(self, e: int, c: int | None) -> None:
        self.kern.set_color(e, 0 if c is None else c)

    # -- alternating paths --------------------------------------------------

    def walk_alternating_path(self, x: int, a: int, b: int) -> AlternatingPath:
        if a == b:
            raise ColoringError("path type needs two distinct colors")
        y, edges = self.kern.walk_collect(x, a, b)
        return AlternatingPath(min(a, b), max(a, b), tuple(edges), x, y)

    def check_maximal(self, p: AlternatingPath) -> None:
        """Raise unless p is a maximal alternating path under this coloring."""
        a, b = p.alpha, p.beta
        if not p.edges:
            if p.x != p.y:
                raise ColoringError("empty path with distinct endpoints")
            if not (self.is_missing(p.x, a) and self.is_missing(p.x, b)):
                raise ColoringError("length-0 path needs both colors missing")
            return
        x = p.x
        prev = 0
        for e in p.edges:
            c = self.kern.color(e)
            if c not in (a, b) or c == prev:
                raise ColoringError(f"edge {e} breaks alternation")
            if x not in self.graph.endpoints(e):
                raise ColoringError(f"edge {e} not linked at vertex {x}")
            x = self.graph.other(e, x)
            prev = c
        if x != p.y:
            raise ColoringError("endpoint mismatch")
        first = self.kern.color(p.edges[0])
        if not self.is_missing(p.x, a + b - first):
            raise ColoringError(f"path not maximal at vertex {p.x}")
        if not self.is_missing(p.y, a + b - prev):
            raise ColoringError(f"path not maximal at vertex {p.y}")

    def flip_path(self, p: AlternatingPath, collection=None, touched=None):
        """Flip p and repair assigned fan colors at its endpoints.

        Returns the fans damaged by the endpoint reassignments (at most 2).
        `touched`, when given, collects every (fan, vertex, old, new)
        reassignment event, damaged or not.
        """
        self.check_maximal(p)
        a, b = p.alpha, p.beta
        self.kern.flip_seq(list(p.edges), a, b)
        damaged = []
        if collection is None:
            return damaged
        empty = not p.edges
        for z in {p.x, p.y}:
            moves = []
            for c in (a, b):
                f = collection.find_ufan(z, c)
                if f is None:
                    continue
                if empty or not self.kern.is_missing(z, c):
                    moves.append((f, c, a + b - c))
            collection._apply_moves(z, moves)
            for f, old, new in moves:
                if touched is not None:
                    touched.append((f, z, old, new))
                if f.is_damaged() and f not in damaged:
                    damaged.append(f)
        return damaged

    # -- misc -----------------------------------------------------------------

    def copy(self) -> "PartialColoring":
        return PartialColoring(self.graph, self.mu, kern=self.kern.copy())

    def fingerprint(self):
        return self.kern.fingerprint()


def init_coloring(graph: Graph, mu: int, initial=None) -> PartialColoring:
    """Build a PartialColoring; `initial` maps edge id -> color.

    Raises on an improper initial map or colors outside 1..mu.
    """
    colors0 = None
    if initial:
        colors0 = [0] * graph.m
        for e, c in initial.items():
            colors0[e] = c
    return PartialColoring(graph, mu, initial=colors0)


@dataclass
class ValidationReport:
    uncolored: int = 0
    properness: list = field(default_factory=list)
    out_of_range: list = field(default_factory=list)
    inconsistencies: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.properness or self.out_of_range or self.inconsistencies)

    def violations(self) -> list[str]:
        return self.properness + self.out_of_range + self.inconsistencies


def validate_coloring(graph: Graph, chi: PartialColoring) -> ValidationReport:
    """Independent audit: properness, color range, structure consistency.

    Properness is recomputed from the raw color array against the graph,
    not through the kernel's own tables.
    """
    rep = ValidationReport()
    colors = chi.colors_snapshot()
    rep.uncolored = sum(1 for c in colors if not c)
    seen: dict[int, int] = {}
    key = chi.mu + 1
    for e, c in enumerate(colors):
        c = int(c)
        if not c:
            continue
        if not 1 <= c <= chi.mu:
            rep.out_of_range.append(f"edge {e} has color {c} > mu={chi.mu}")
            continue
        for x in graph.endpoints(e):
            k = x * key + c
            if k in seen:
                rep.properness.append(
                    f"vertex {x}: edges {seen[k]} and {e} share color {c}")
            else:
                seen[k] = e
    rep.inconsistencies = chi.kern.consistency_errors()
    return rep


def quick_validate_arrays(graph: Graph, colors, bound: int) -> tuple[bool, str]:
    """Vectorized audit from a raw color array: proper, total, color bound.

    Sort-based duplicate scan over (vertex, color) codes, packed into int32
    when they fit (memory-lean enough for hundred-million-edge instances),
    independent of any kernel tables.
    """
    import numpy as np

    colors = np.asarray(colors)
    if graph.m == 0:
        return True, "empty"
    uncolored = int((colors == 0).sum())
    if uncolored:
        return False, f"{uncolored} uncolored edges"
    cmax = int(colors.max())
    if cmax > bound:
        return False, f"color {cmax} exceeds bound {bound}"
    span = cmax + 1
    dtype = np.int32 if (graph.n + 1) * span < 2**31 else np.int64
    colors = colors.astype(dtype, copy=False)
    codes = np.empty(2 * graph.m, dtype=dtype)
    np.multiply(graph.u.astype(dtype, copy=False), span, out=codes[:graph.m])
    codes[:graph.m] += colors
    np.multiply(graph.v.astype(dtype, copy=False), span, out=codes[graph.m:])
    codes[graph.m:] += colors
    codes.sort()
    if bool((codes[1:] == codes[:-1]).any()):
        return False, "adjacent edges share a color"
    return True, "ok"


def quick_validate(graph: Graph, chi: PartialColoring,
                   max_colors: int | None = None) -> tuple[bool, str]:
    """quick_validate_arrays against a live PartialColoring."""
    bound = chi.mu if max_colors is None else max_colors
    return quick_validate_arrays(graph, chi.colors_snapshot(), bound)


# -- coloring dump format ("edge_id color", '-' for uncolored) -----------------

def dump_coloring(chi: PartialColoring, out) -> None:
    colors = chi.colors_snapshot()
    for e, c in enumerate(colors):
        out.write(f"{e} {int(c) if c else '-'}\n")


def load_coloring(graph: Graph, source) -> dict[int, int]:
    """Parse a dump back into an edge -> color map (uncolored omitted)."""
    if isinstance(source, str):
        import io
        source = io.StringIO(source)
    out: dict[int, int] = {}
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ColoringError(f"line {lineno}: expected 'edge color'")
        try:
            e = int(parts[0])
        except ValueError:
            raise ColoringError(f"line {lineno}: bad edge id") from None
        if not 0 <= e < graph.m:
            raise ColoringError(f"line {lineno}: edge id {e} out of range")
        if parts[1] == "-":
            continue
        try:
            c = int(parts[1])
        except ValueError:
            raise ColoringError(f"line {lineno}: bad color") from None
        if e in out:
            raise ColoringError(f"line {lineno}: duplicate edge id {e}")
        out[e] = c
    return out
