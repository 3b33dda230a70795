"""Static simple-graph representation, edge-list I/O, generators, Euler split.

Vertices are the integers 1..n after construction; edge ids are dense
0..m-1 and stable for the lifetime of a Graph.  Subgraphs produced by
`euler_partition` (and by the palette recursion) carry a `parent_edge_ids`
array mapping their local dense ids back to the parent's, so colorings of
edge-disjoint subgraphs merge by id.
"""

from __future__ import annotations

import io
from typing import Iterable, Optional

import numpy as np


class GraphError(ValueError):
    """Malformed input: parse failures, self-loops, duplicate edges."""


class Graph:
    """Simple undirected graph with integer vertices 1..n.

    Each edge is stored once; `u[e] < v[e]` is not required but ids are
    canonical and stable.  Immutable after construction.
    """

    __slots__ = ("n", "m", "u", "v", "max_degree", "_deg", "_indptr", "_inc",
                 "parent_edge_ids")

    def __init__(self, n: int, u, v, parent_edge_ids=None, _trusted=False):
        u = np.ascontiguousarray(u, dtype=np.int32)
        v = np.ascontiguousarray(v, dtype=np.int32)
        if u.shape != v.shape:
            raise GraphError("endpoint arrays differ in length")
        self.n = int(n)
        self.m = int(u.shape[0])
        self.u = u
        self.v = v
        self.parent_edge_ids = (None if parent_edge_ids is None
                                else np.ascontiguousarray(parent_edge_ids, dtype=np.int32))
        if not _trusted:
            self._validate()
        deg = np.zeros(self.n + 1, dtype=np.int64)
        if self.m:
            np.add.at(deg, u, 1)
            np.add.at(deg, v, 1)
        self._deg = deg
        self.max_degree = int(deg.max()) if self.n else 0
        self._indptr = None
        self._inc = None

    def _validate(self) -> None:
        if self.m == 0:
            return
        u, v = self.u, self.v
        if int(u.min(initial=1)) < 1 or int(v.min(initial=1)) < 1 \
                or int(u.max(initial=1)) > self.n or int(v.max(initial=1)) > self.n:
            raise GraphError("vertex id out of range 1..n")
        if bool((u == v).any()):
            e = int(np.nonzero(u == v)[0][0])
            raise GraphError(f"self-loop at vertex {int(u[e])}")
        lo = np.minimum(u, v).astype(np.int64)
        hi = np.maximum(u, v).astype(np.int64)
        code = lo * (self.n + 1) + hi
        uniq = np.unique(code)
        if uniq.shape[0] != self.m:
            # locate one duplicate for the error message
            order = np.argsort(code, kind="stable")
            s = code[order]
            k = int(np.nonzero(s[1:] == s[:-1])[0][0])
            e = int(order[k + 1])
            raise GraphError(f"duplicate edge {int(lo[e])} {int(hi[e])}")

    # -- accessors ---------------------------------------------------------

    def degree(self, x: int) -> int:
        return int(self._deg[x])

    def degrees(self) -> np.ndarray:
        return self._deg

    def endpoints(self, e: int) -> tuple[int, int]:
        return int(self.u[e]), int(self.v[e])

    def other(self, e: int, x: int) -> int:
        a, b = int(self.u[e]), int(self.v[e])
        return b if x == a else a

    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR incidence: (indptr, eids) with eids[indptr[x]:indptr[x+1]]
        the edge ids at vertex x.  Built once, cached."""
        if self._indptr is None:
            indptr = np.zeros(self.n + 2, dtype=np.int64)
            np.add.at(indptr, self.u + 1, 1)
            np.add.at(indptr, self.v + 1, 1)
            np.cumsum(indptr, out=indptr)
            eids = np.empty(2 * self.m, dtype=np.int64)
            cursor = indptr[:-1].copy()
            for arr in (self.u, self.v):
                for e in range(self.m):
                    x = arr[e]
                    eids[cursor[x]] = e
                    cursor[x] += 1
            self._indptr, self._inc = indptr, eids
        return self._indptr, self._inc

    def incident_edges(self, x: int) -> np.ndarray:
        indptr, eids = self.incidence()
        return eids[indptr[x]:indptr[x + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, b in zip(self.u.tolist(), self.v.tolist())}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


# -- edge-list text format --------------------------------------------------

def load_edge_list(source) -> Graph:
    """Parse whitespace-separated "u v" lines into a Graph.

    Comment lines start with '#'.  Arbitrary positive integer labels are
    compacted to 1..n in sorted order.  Self-loops and duplicate edges
    (either orientation) are rejected with the offending line number.
    """
    if isinstance(source, (str, bytes)):
        text = source.decode() if isinstance(source, bytes) else source
        lines: Iterable[str] = io.StringIO(text)
    else:
        lines = (ln.decode() if isinstance(ln, bytes) else ln for ln in source)

    raw_u: list[int] = []
    raw_v: list[int] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {stripped!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex label") from None
        if a <= 0 or b <= 0:
            raise GraphError(f"line {lineno}: vertex labels must be positive")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        raw_u.append(a)
        raw_v.append(b)

    if not raw_u:
        return Graph(0, np.zeros(0, np.int32), np.zeros(0, np.int32))
    labels = np.unique(np.concatenate([np.asarray(raw_u, dtype=np.int64),
                                       np.asarray(raw_v, dtype=np.int64)]))
    u = np.searchsorted(labels, np.asarray(raw_u, dtype=np.int64)) + 1
    v = np.searchsorted(labels, np.asarray(raw_v, dtype=np.int64)) + 1
    return Graph(labels.shape[0], u, v)


def write_edge_list(g: Graph, out) -> None:
    """Emit the same "u v" format load_edge_list reads (round-trip stable)."""
    for a, b in zip(g.u.tolist(), g.v.tolist()):
        out.write(f"{a} {b}\n")


# -- generators --------------------------------------------------------------

def gen_random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform-ish random simple graph with exactly m edges, deterministic."""
    if n < 0 or m < 0:
        raise GraphError("n and m must be nonnegative")
    limit = n * (n - 1) // 2
    if m > limit:
        raise GraphError(f"m={m} exceeds the {limit} possible edges on {n} vertices")
    rng = np.random.default_rng(seed)
    codes = np.zeros(0, dtype=np.int64)
    while codes.shape[0] < m:
        need = m - codes.shape[0]
        a = rng.integers(1, n + 1, size=2 * need + 16, dtype=np.int64)
        b = rng.integers(1, n + 1, size=2 * need + 16, dtype=np.int64)
        keep = a != b
        a, b = a[keep], b[keep]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        fresh = lo * (n + 1) + hi
        codes = np.unique(np.concatenate([codes, fresh]))
        if codes.shape[0] > m:
            codes = rng.permutation(codes)[:m]
            codes = np.unique(codes)
    u = (codes // (n + 1)).astype(np.int32)
    v = (codes % (n + 1)).astype(np.int32)
    # codes are unique non-loop pairs by construction
    return Graph(n, u, v, _trusted=True)


def gen_random_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular graph via the pairing model, deterministic given seed.

    Offending pairs (loops or duplicates) are rejected and their stubs
    re-shuffled in bulk; if repair stalls the whole run restarts with the
    internal seed incremented.
    """
    if d < 0 or n < 0:
        raise GraphError("n and d must be nonnegative")
    if d >= n and not (n == 0 and d == 0):
        raise GraphError(f"degree d={d} requires at least d+1={d + 1} vertices")
    if (n * d) % 2 != 0:
        raise GraphError(f"n*d must be even, got n={n}, d={d}")
    if d == 0 or n == 0:
        return Graph(n, np.zeros(0, np.int32), np.zeros(0, np.int32))
    if 2 * d > n - 1:
        # dense regime: build the (n-1-d)-regular complement and invert it
        comp = gen_random_regular(n, n - 1 - d, seed)
        present = set()
        for a, b in zip(comp.u.tolist(), comp.v.tolist()):
            present.add((min(a, b), max(a, b)))
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                 if (a, b) not in present]
        u = np.fromiter((p[0] for p in pairs), dtype=np.int32, count=len(pairs))
        v = np.fromiter((p[1] for p in pairs), dtype=np.int32, count=len(pairs))
        return Graph(n, u, v, _trusted=True)

    m = n * d // 2
    attempt_seed = seed
    while True:
        rng = np.random.default_rng(attempt_seed)
        stubs = np.repeat(np.arange(1, n + 1, dtype=np.int32), d)
        rng.shuffle(stubs)
        ok = _repair_pairing(stubs, n, rng)
        if ok:
            u = stubs[0::2].copy()
            v = stubs[1::2].copy()
            del stubs
            # the repair loop has already certified no loops or duplicates
            g = Graph(n, u, v, _trusted=True)
            assert g.m == m
            return g
        attempt_seed += 1


def _repair_pairing(stubs: np.ndarray, n: int, rng) -> bool:
    """Swap offending pairs' stubs with random partners until simple.

    One global duplicate scan (sort), then purely local bookkeeping for the
    modified pairs: live multiplicity of a pair code is its count in the
    static snapshot, minus codes released by modified pairs, plus the
    modified pairs' current codes.
    """
    m = stubs.shape[0] // 2
    span = n + 1

    def code_of(i: int) -> int:
        a, b = int(stubs[2 * i]), int(stubs[2 * i + 1])
        return (a * span + b) if a < b else (b * span + a)

    a = stubs[0::2]
    b = stubs[1::2]
    loops = np.nonzero(a == b)[0]
    codes = np.minimum(a, b).astype(np.int64)
    codes *= span
    codes += np.maximum(a, b)
    static = np.sort(codes)
    dup_codes = np.unique(static[1:][static[1:] == static[:-1]])
    active = set(loops.tolist())
    if dup_codes.shape[0]:
        chunk = 1 << 24
        for lo_i in range(0, m, chunk):
            part = codes[lo_i:lo_i + chunk]
            hit = np.searchsorted(dup_codes, part)
            hit[hit == dup_codes.shape[0]] = 0
            for off in np.nonzero(dup_codes[hit] == part)[0].tolist():
                active.add(lo_i + off)
    del a, b, codes, loops

    def static_count(c: int) -> int:
        lo = int(np.searchsorted(static, c, side="left"))
        hi = int(np.searchsorted(static, c, side="right"))
        return hi - lo

    released: dict[int, int] = {}
    current: dict[int, int] = {}   # modified pair -> its current code
    by_code: dict[int, int] = {}   # code -> count among modified pairs

    def live_count(c: int) -> int:
        return static_count(c) - released.get(c, 0) + by_code.get(c, 0)

    def retire_code(i: int) -> None:
        """Account for pair i's code leaving the live multiset."""
        if i in current:
            by_code[current[i]] -= 1
        else:
            old = code_of(i)
            released[old] = released.get(old, 0) + 1

    def adopt_code(i: int) -> None:
        c = code_of(i)
        current[i] = c
        by_code[c] = by_code.get(c, 0) + 1

    for _ in range(2000):
        if not active:
            return True
        batch = sorted(active)
        active = set()
        partners = rng.integers(0, m, size=len(batch))
        touched = set()
        for i, j in zip(batch, partners.tolist()):
            retire_code(i)
            if j != i:
                retire_code(j)
            si, sj = 2 * i + 1, 2 * j + 1
            stubs[si], stubs[sj] = stubs[sj], stubs[si]
            adopt_code(i)
            if j != i:
                adopt_code(j)
            touched.add(i)
            touched.add(j)
        for p in touched:
            if stubs[2 * p] == stubs[2 * p + 1] or live_count(current[p]) > 1:
                active.add(p)
    return False


# -- Euler partition ----------------------------------------------------------

def euler_partition(g: Graph) -> tuple[Graph, Graph]:
    """Split E into two halves by alternating along Euler circuits.

    A virtual vertex (0) is joined to every odd-degree vertex so each
    component of the augmented graph is Eulerian; circuits are walked per
    component and edges assigned alternately; virtual edges are dropped.
    Guarantees: exact partition; deg_i(x) <= ceil(deg(x)/2) except at most
    one +1 per all-even component with an odd edge count, placed in half A
    at a minimum-degree start vertex, so Delta(G1)+Delta(G2) <= Delta+1.
    """
    from . import kernel
    side = kernel.euler_split(g.n, g.u, g.v, g.degrees())
    ids1 = np.nonzero(side == 0)[0]
    ids2 = np.nonzero(side == 1)[0]
    g1 = Graph(g.n, g.u[ids1], g.v[ids1], parent_edge_ids=ids1, _trusted=True)
    g2 = Graph(g.n, g.u[ids2], g.v[ids2], parent_edge_ids=ids2, _trusted=True)
    return g1, g2
