"""Separable collections of u-fans and their four queries.

A u-fan parks two uncolored edges (u,v), (u,w) at a center u together with
assigned available colors c(u) != c(v) = c(w).  A collection is separable
when fans are edge-disjoint and the assigned colors at every shared vertex
are distinct; activation then always succeeds: at most one of the two
leaf paths can end at the center.
"""

from __future__ import annotations

from .coloring import AlternatingPath, ColoringError, PartialColoring

__all__ = ["UFan", "CollectionError", "SeparableCollection", "initialize",
           "dump_fans"]


class CollectionError(ValueError):
    """A u-fan record violates its definition against the live coloring."""


class UFan:
    """Center u, leaves v and w (unordered), mutable assigned colors.

    Identity is the (u, {v, w}) triple; Flip-Path mutates the colors of an
    existing fan in place.  A damaged fan is the same record once
    c(u) != c(v) = c(w) no longer holds.
    """

    __slots__ = ("u", "v", "w", "cu", "cv", "cw", "ev", "ew")

    def __init__(self, u, v, w, cu, cv, cw, ev, ew):
        self.u, self.v, self.w = u, v, w
        self.cu, self.cv, self.cw = cu, cv, cw
        self.ev, self.ew = ev, ew  # edge ids of (u,v) and (u,w)

    def key(self):
        return (self.u, min(self.v, self.w), max(self.v, self.w))

    def vertices(self):
        return (self.u, self.v, self.w)

    def edge_ids(self):
        return (self.ev, self.ew)

    def color_at(self, x):
        if x == self.u:
            return self.cu
        if x == self.v:
            return self.cv
        if x == self.w:
            return self.cw
        raise KeyError(f"vertex {x} not in fan {self.key()}")

    def set_color_at(self, x, c):
        if x == self.u:
            self.cu = c
        elif x == self.v:
            self.cv = c
        elif x == self.w:
            self.cw = c
        else:
            raise KeyError(f"vertex {x} not in fan {self.key()}")

    def is_damaged(self):
        return not (self.cu != self.cv and self.cv == self.cw)

    def fan_type(self):
        """The unordered color pair {c(u), c(v)} (a set; damaged fans may
        collapse to one color or spread to three)."""
        return frozenset((self.cu, self.cv, self.cw))

    def __repr__(self):
        return (f"UFan(u={self.u}, v={self.v}, w={self.w}, "
                f"cu={self.cu}, cv={self.cv}, cw={self.cw})")


class SeparableCollection:
    """Fans indexed by (vertex, assigned color), with O(log mu)-style ops.

    psi_x maps assigned color -> fan at x; C_U(x) is the assigned-color set
    at x; the available-unassigned sets C-bar are views computed from the
    kernel's truncated missing sets minus the assigned marks, never
    materialized (keeps stored entries O(m))."""

    def __init__(self, chi: PartialColoring):
        self.chi = chi
        self.fans: dict[tuple, UFan] = {}
        self.psi: dict[int, dict[int, UFan]] = {}
        self.cu_sets: dict[int, set[int]] = {}
        self.used_edges: set[int] = set()

    # -- sizes / audit ------------------------------------------------------

    def __len__(self):
        return len(self.fans)

    def __iter__(self):
        return iter(self.fans.values())

    def __contains__(self, f: UFan):
        return self.fans.get(f.key()) is f

    def entry_count(self) -> int:
        """Stored entries across psi and C_U (space audit; C-bar is a view)."""
        return (sum(len(d) for d in self.psi.values())
                + sum(len(s) for s in self.cu_sets.values()))

    def _check_definition(self, f: UFan) -> None:
        """Raise unless f is a u-fan (or the live coloring contradicts it)."""
        chi = self.chi
        g = chi.graph
        if len({f.u, f.v, f.w}) != 3:
            raise CollectionError(f"{f}: vertices not distinct")
        for e, leaf in ((f.ev, f.v), (f.ew, f.w)):
            a, b = g.endpoints(e)
            if {a, b} != {f.u, leaf}:
                raise CollectionError(f"{f}: edge {e} is not ({f.u},{leaf})")
            if chi.color_of(e):
                raise CollectionError(f"{f}: edge {e} is colored")
        for x in f.vertices():
            if not chi.is_missing(x, f.color_at(x)):
                raise CollectionError(
                    f"{f}: color {f.color_at(x)} not missing at vertex {x}")
        if f.is_damaged():
            raise CollectionError(f"{f}: condition 3 violated")

    # -- the four queries ------------------------------------------------------

    def insert(self, f: UFan) -> bool:
        """Add f if the collection stays separable; False on conflict.

        Raises CollectionError if f itself violates the u-fan definition
        against the current coloring.
        """
        self._check_definition(f)
        if f.key() in self.fans:
            return False
        if f.ev in self.used_edges or f.ew in self.used_edges:
            return False
        for x in f.vertices():
            if f.color_at(x) in self.cu_sets.get(x, ()):
                return False
        self.fans[f.key()] = f
        self.used_edges.add(f.ev)
        self.used_edges.add(f.ew)
        for x in f.vertices():
            c = f.color_at(x)
            self.psi.setdefault(x, {})[c] = f
            self.cu_sets.setdefault(x, set()).add(c)
            self.chi.kern.cu_mark(x, c)
        return True

    def delete(self, f: UFan) -> bool:
        """Remove f if present; False otherwise."""
        if self.fans.get(f.key()) is not f:
            return False
        del self.fans[f.key()]
        self.used_edges.discard(f.ev)
        self.used_edges.discard(f.ew)
        for x in f.vertices():
            c = f.color_at(x)
            d = self.psi.get(x)
            if d and d.get(c) is f:
                del d[c]
                if not d:
                    del self.psi[x]
            s = self.cu_sets.get(x)
            if s:
                s.discard(c)
                if not s:
                    del self.cu_sets[x]
            self.chi.kern.cu_unmark(x, c)
        return True

    def find_ufan(self, x: int, c: int) -> UFan | None:
        d = self.psi.get(x)
        return d.get(c) if d else None

    def missing_color(self, x: int) -> int:
        """Minimum color in miss(x) \\ C_U(x) (deterministic choice)."""
        return self.chi.kern.cbar_min(x)

    # -- internal mutation used by Flip-Path -------------------------------------

    def _apply_moves(self, z: int, moves) -> None:
        """Atomically reassign fan colors at z (two fans may trade colors)."""
        if not moves:
            return
        d = self.psi.setdefault(z, {})
        s = self.cu_sets.setdefault(z, set())
        for f, old, _new in moves:
            assert f.color_at(z) == old
            if d.get(old) is f:
                del d[old]
            s.discard(old)
            self.chi.kern.cu_unmark(z, old)
        for f, _old, new in moves:
            assert d.get(new) is None, "assigned-color collision at a vertex"
            d[new] = f
            s.add(new)
            f.set_color_at(z, new)
            self.chi.kern.cu_mark(z, new)

    # -- activation -----------------------------------------------------------------

    def activate_ufan(self, f: UFan) -> int:
        """Color one of f's uncolored edges via the key property.

        Walks the {c(u), c(v)}-path from leaf v; if it ends at the center,
        the w-path is used instead (at most one of the two can end there).
        Returns the newly colored edge id.
        """
        if self.fans.get(f.key()) is not f:
            raise CollectionError("fan not in collection")
        if f.is_damaged():
            raise CollectionError("cannot activate a damaged fan")
        a, b = f.cu, f.cv
        chi = self.chi
        leaf, edge = f.v, f.ev
        y, edges = chi.kern.walk_collect(leaf, a, b)
        if y == f.u:
            leaf, edge = f.w, f.ew
            y, edges = chi.kern.walk_collect(leaf, a, b)
            assert y != f.u, "both leaf paths end at the center"
        self.delete(f)
        path = AlternatingPath(min(a, b), max(a, b), tuple(edges), leaf, y)
        for h in chi.flip_path(path, collection=self):
            self.delete(h)  # eager removal of the (at most one) damaged fan
        chi.set_color(edge, f.cu)
        return edge

    # -- validation --------------------------------------------------------------------

    def validator_errors(self, check_all_vertices: bool = False) -> list[str]:
        """Full separability + definition audit (test oracle)."""
        errors: list[str] = []
        chi = self.chi
        g = chi.graph
        edge_seen: dict[int, tuple] = {}
        for f in self.fans.values():
            u, v, w = f.vertices()
            if len({u, v, w}) != 3:
                errors.append(f"{f}: vertices not distinct")
            for e, leaf in ((f.ev, f.v), (f.ew, f.w)):
                a, b = g.endpoints(e)
                if {a, b} != {u, leaf}:
                    errors.append(f"{f}: edge {e} is not ({u},{leaf})")
                if chi.color_of(e):
                    errors.append(f"{f}: edge {e} is colored")
                if e in edge_seen:
                    errors.append(f"{f}: shares edge {e} with {edge_seen[e]}")
                edge_seen[e] = f.key()
            for x in f.vertices():
                if not chi.is_missing(x, f.color_at(x)):
                    errors.append(f"{f}: color {f.color_at(x)} not missing at {x}")
            if f.is_damaged():
                errors.append(f"{f}: damaged (condition 3 fails)")
        for x, d in self.psi.items():
            for c, f in d.items():
                if self.fans.get(f.key()) is not f:
                    errors.append(f"psi[{x}][{c}] points at a removed fan")
                elif f.color_at(x) != c:
                    errors.append(f"psi[{x}][{c}] color mismatch")
        per_vertex: dict[int, list[int]] = {}
        for f in self.fans.values():
            for x in f.vertices():
                per_vertex.setdefault(x, []).append(f.color_at(x))
        for x, cs in per_vertex.items():
            if len(cs) != len(set(cs)):
                errors.append(f"vertex {x}: repeated assigned colors {sorted(cs)}")
            if set(cs) != self.cu_sets.get(x, set()):
                errors.append(f"vertex {x}: C_U set out of sync")
        vertices = range(1, g.n + 1) if check_all_vertices else per_vertex
        for x in vertices:
            if g.degree(x) >= chi.mu:
                # the availability guarantee needs mu >= deg+1; palette-
                # restricted subproblems can saturate a vertex legitimately
                continue
            try:
                chi.kern.cbar_min(x)
            except ColoringError:
                errors.append(f"vertex {x}: empty available-unassigned set")
        return errors


def dump_fans(coll: SeparableCollection, out) -> None:
    """Debug dump: one "u v w c_u c_v c_w" line per fan, sorted by key."""
    for key in sorted(coll.fans):
        f = coll.fans[key]
        out.write(f"{f.u} {f.v} {f.w} {f.cu} {f.cv} {f.cw}\n")


def initialize(graph, chi: PartialColoring) -> SeparableCollection:
    """Fresh empty collection over chi (the paper's Initialize(G, chi))."""
    if chi.graph is not graph:
        raise CollectionError("coloring belongs to a different graph")
    return SeparableCollection(chi)
