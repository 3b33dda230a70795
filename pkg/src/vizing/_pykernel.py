"""Pure-Python coloring kernel: the fallback twin of vizing._speedups.

Structures per vertex x (colors are 1..mu, 0 is the uncolored sentinel):

  * pos        - color -> incident edge id, one global dict keyed x*(mu+1)+c
  * missbits   - int bitmask of the *truncated* missing set
                 miss(x) & C[deg(x)+1]; bit c-1 set <=> color c missing
  * cubits     - bitmask of collection-assigned colors <= deg(x)+1, so the
                 collection's available-color query is a masked ffs

The colors > deg(x)+1 are never materialized per vertex: a color is missing
iff pos has no entry, which keeps space O(m) as required.  ``ops`` counts
abstract structure operations identically to the compiled backend.
"""

from __future__ import annotations


class ColoringError(ValueError):
    """Properness or palette violation in a coloring operation."""


class PyColorKernel:
    backend = "py"

    __slots__ = ("n", "m", "mu", "ops", "_colors", "_pos", "_missbits",
                 "_cubits", "_fmiss", "_fcu", "_deg", "_u", "_v", "_uncolored")

    def __init__(self, n, mu, u, v, deg, colors=None):
        self.n = int(n)
        self.m = len(u)
        self.mu = int(mu)
        self.ops = 0
        self._u = list(u)
        self._v = list(v)
        self._deg = [int(deg[x]) for x in range(self.n + 1)]
        self._colors = [0] * self.m
        self._pos = {}
        # truncated missing sets: colors <= min(deg+1, mu); row 0 unused
        self._missbits = [(1 << min(self._deg[x] + 1, self.mu)) - 1
                          for x in range(self.n + 1)]
        self._missbits[0] = 0
        self._cubits = [0] * (self.n + 1)
        # full-palette twins, for the common-available-color query
        full = (1 << self.mu) - 1
        self._fmiss = [full] * (self.n + 1)
        self._fcu = [0] * (self.n + 1)
        self._uncolored = self.m
        if colors is not None:
            for e, c in enumerate(colors):
                c = int(c)
                if c:
                    self.set_color(e, c)

    # -- basic queries -------------------------------------------------------

    def degree(self, x):
        return self._deg[x]

    def trunc(self, x):
        return self._deg[x] + 1

    def color(self, e):
        return self._colors[e]

    def endpoints(self, e):
        return self._u[e], self._v[e]

    def uncolored_count(self):
        return self._uncolored

    def max_color_used(self):
        return max(self._colors, default=0)

    def colors_snapshot(self):
        return list(self._colors)

    def edge_at(self, x, c):
        self.ops += 1
        return self._pos.get(x * (self.mu + 1) + c, -1)

    def is_missing(self, x, c):
        self.ops += 1
        return (x * (self.mu + 1) + c) not in self._pos

    # -- truncated missing sets ------------------------------------------------

    def miss_min(self, x):
        self.ops += 1
        bits = self._missbits[x]
        if not bits:
            raise ColoringError(f"empty truncated missing set at vertex {x}")
        return (bits & -bits).bit_length()

    def miss_trunc(self, x):
        self.ops += 1
        bits = self._missbits[x]
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length())
            bits ^= low
        return out

    # -- collection marks (assigned colors) -----------------------------------

    def cu_mark(self, x, c):
        self.ops += 1
        self._fcu[x] |= 1 << (c - 1)
        if c <= self._deg[x] + 1:
            self._cubits[x] |= 1 << (c - 1)

    def cu_unmark(self, x, c):
        self.ops += 1
        self._fcu[x] &= ~(1 << (c - 1))
        if c <= self._deg[x] + 1:
            self._cubits[x] &= ~(1 << (c - 1))

    def cu_marked(self, x, c):
        self.ops += 1
        if c <= self._deg[x] + 1:
            return bool(self._cubits[x] >> (c - 1) & 1)
        return False

    def cbar_min(self, x):
        self.ops += 1
        bits = self._missbits[x] & ~self._cubits[x]
        if not bits:
            raise ColoringError(f"no available unassigned color at vertex {x}")
        return (bits & -bits).bit_length()

    def cbar_trunc(self, x):
        self.ops += 1
        bits = self._missbits[x] & ~self._cubits[x]
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length())
            bits ^= low
        return out

    def common_free(self, x, y):
        """Minimum color missing at both x and y and assigned at neither;
        0 when no such color exists."""
        self.ops += 1
        bits = (self._fmiss[x] & ~self._fcu[x]) & (self._fmiss[y] & ~self._fcu[y])
        if not bits:
            return 0
        return (bits & -bits).bit_length()

    def is_available(self, x, c):
        """Missing at x and not assigned to any fan at x."""
        self.ops += 1
        return bool((self._fmiss[x] & ~self._fcu[x]) >> (c - 1) & 1)

    # -- mutation ---------------------------------------------------------------

    def set_color(self, e, c):
        key = self.mu + 1
        old = self._colors[e]
        a, b = self._u[e], self._v[e]
        if c == old:
            return
        if c:
            if not 1 <= c <= self.mu:
                raise ColoringError(f"color {c} out of range 1..{self.mu}")
            if old:
                raise ColoringError(f"edge {e} already colored {old}")
            self.ops += 2
            if a * key + c in self._pos:
                raise ColoringError(f"color {c} already present at vertex {a}")
            if b * key + c in self._pos:
                raise ColoringError(f"color {c} already present at vertex {b}")
            self.ops += 2
            self._pos[a * key + c] = e
            self._pos[b * key + c] = e
            self._colors[e] = c
            self._uncolored -= 1
            bit = 1 << (c - 1)
            for x in (a, b):
                self._fmiss[x] &= ~bit
                if c <= self._deg[x] + 1:
                    self.ops += 1
                    self._missbits[x] &= ~bit
        else:
            if not old:
                return
            self.ops += 2
            del self._pos[a * key + old]
            del self._pos[b * key + old]
            self._colors[e] = 0
            self._uncolored += 1
            bit = 1 << (old - 1)
            for x in (a, b):
                self._fmiss[x] |= bit
                if old <= self._deg[x] + 1:
                    self.ops += 1
                    self._missbits[x] |= bit

    # -- alternating-path primitives ---------------------------------------------

    def _start_color(self, x, a, b):
        ma = self.is_missing(x, a)
        mb = self.is_missing(x, b)
        if not (ma or mb):
            raise ColoringError(f"vertex {x} misses neither {a} nor {b}")
        if ma and mb:
            return 0
        return b if ma else a

    def walk(self, x, a, b):
        """Other endpoint and length of the maximal {a,b}-path from x."""
        c = self._start_color(x, a, b)
        if c == 0:
            return x, 0
        length = 0
        while True:
            e = self.edge_at(x, c)
            if e < 0:
                return x, length
            ue, ve = self._u[e], self._v[e]
            x = ve if x == ue else ue
            c = a + b - c
            length += 1

    def walk_collect(self, x, a, b):
        """Other endpoint and the edge sequence of the maximal path from x."""
        c = self._start_color(x, a, b)
        edges = []
        if c == 0:
            return x, edges
        while True:
            e = self.edge_at(x, c)
            if e < 0:
                return x, edges
            edges.append(e)
            ue, ve = self._u[e], self._v[e]
            x = ve if x == ue else ue
            c = a + b - c

    def flip_seq(self, edges, a, b):
        """Swap colors a<->b along an alternating edge sequence.

        Two passes (remove all, re-add flipped) so the color table never
        holds a transient duplicate at shared interior vertices.
        """
        key = self.mu + 1
        olds = []
        for e in edges:
            old = self._colors[e]
            olds.append(old)
            ue, ve = self._u[e], self._v[e]
            self.ops += 2
            del self._pos[ue * key + old]
            del self._pos[ve * key + old]
            bit = 1 << (old - 1)
            for x in (ue, ve):
                self._fmiss[x] |= bit
                if old <= self._deg[x] + 1:
                    self.ops += 1
                    self._missbits[x] |= bit
        for e, old in zip(edges, olds):
            new = a + b - old
            ue, ve = self._u[e], self._v[e]
            self.ops += 2
            if ue * key + new in self._pos or ve * key + new in self._pos:
                raise ColoringError(f"flip would duplicate color {new} on edge {e}")
            self._pos[ue * key + new] = e
            self._pos[ve * key + new] = e
            self._colors[e] = new
            bit = 1 << (new - 1)
            for x in (ue, ve):
                self._fmiss[x] &= ~bit
                if new <= self._deg[x] + 1:
                    self.ops += 1
                    self._missbits[x] &= ~bit

    def walk_flip(self, x, a, b):
        y, edges = self.walk_collect(x, a, b)
        self.flip_seq(edges, a, b)
        return y, len(edges)

    # -- cloning / auditing ---------------------------------------------------------

    def copy(self):
        k = PyColorKernel.__new__(PyColorKernel)
        k.n, k.m, k.mu, k.ops = self.n, self.m, self.mu, 0
        k._u, k._v, k._deg = self._u, self._v, self._deg
        k._colors = list(self._colors)
        k._pos = dict(self._pos)
        k._missbits = list(self._missbits)
        k._cubits = list(self._cubits)
        k._fmiss = list(self._fmiss)
        k._fcu = list(self._fcu)
        k._uncolored = self._uncolored
        return k

    def fingerprint(self):
        return (tuple(self._colors), frozenset(self._pos.items()),
                tuple(self._missbits), tuple(self._cubits))

    def consistency_errors(self):
        """Rebuild the derived structures from the color array and diff."""
        key = self.mu + 1
        errors = []
        expect_pos = {}
        for e, c in enumerate(self._colors):
            if not c:
                continue
            if not 1 <= c <= self.mu:
                errors.append(f"edge {e}: color {c} out of range")
                continue
            for x in (self._u[e], self._v[e]):
                k = x * key + c
                if k in expect_pos:
                    errors.append(f"vertex {x}: color {c} on edges "
                                  f"{expect_pos[k]} and {e}")
                expect_pos[k] = e
        if expect_pos != self._pos:
            for k in set(expect_pos) ^ set(self._pos):
                x, c = divmod(k, key)
                errors.append(f"phi' mismatch at vertex {x} color {c}")
            for k in set(expect_pos) & set(self._pos):
                if expect_pos[k] != self._pos[k]:
                    x, c = divmod(k, key)
                    errors.append(f"phi' stale entry at vertex {x} color {c}")
        for x in range(1, self.n + 1):
            hi = min(self._deg[x] + 1, self.mu)
            bits = (1 << hi) - 1
            for c in range(1, hi + 1):
                if x * key + c in expect_pos:
                    bits &= ~(1 << (c - 1))
            if bits != self._missbits[x]:
                errors.append(f"missing-set mismatch at vertex {x}")
        if self._uncolored != sum(1 for c in self._colors if not c):
            errors.append("uncolored counter out of sync")
        return errors

    def _debug_set_pos(self, x, c, e):
        """Fault injection for the validator tests."""
        k = x * (self.mu + 1) + c
        if e is None:
            self._pos.pop(k, None)
        else:
            self._pos[k] = e


# -- Euler split ------------------------------------------------------------------


def euler_split(n, u, v, deg):
    """Alternating assignment along Euler circuits of the augmented graph.

    Returns a 0/1 side per edge.  A virtual vertex 0 is attached to every
    odd-degree vertex; circuits start at the virtual vertex when present,
    else at a minimum-degree vertex, and the first edge of every circuit
    goes to side 0, so odd-circuit wrap imbalances all land in side 0.
    """
    import numpy as np

    m = len(u)
    side = np.zeros(m, dtype=np.uint8)
    if m == 0:
        return side
    odd = [x for x in range(1, n + 1) if deg[x] % 2 == 1]
    total = m + len(odd)

    adeg = np.zeros(n + 1, dtype=np.int64)
    for x in range(1, n + 1):
        adeg[x] = deg[x]
    for x in odd:
        adeg[x] += 1
    adeg0 = len(odd)

    indptr = np.zeros(n + 2, dtype=np.int64)
    indptr[1] = adeg0
    for x in range(1, n + 1):
        indptr[x + 1] = indptr[x] + adeg[x]
    heads = np.empty(2 * total, dtype=np.int64)
    eid = np.empty(2 * total, dtype=np.int64)
    cur = indptr[:-1].copy()

    def put(x, y, e):
        heads[cur[x]] = y
        eid[cur[x]] = e
        cur[x] += 1

    for e in range(m):
        put(int(u[e]), int(v[e]), e)
        put(int(v[e]), int(u[e]), e)
    for k, x in enumerate(odd):
        put(0, x, m + k)
        put(x, 0, m + k)

    used = np.zeros(total, dtype=bool)
    nxt = indptr[:-1].copy()
    order = [0] if odd else []
    order += sorted(range(1, n + 1), key=lambda x: (deg[x], x))

    for start in order:
        while True:
            # fast-forward the start's edge cursor
            while nxt[start] < indptr[start + 1] and used[eid[nxt[start]]]:
                nxt[start] += 1
            if nxt[start] >= indptr[start + 1]:
                break
            # one Euler circuit from `start`; reversed pop order is a circuit
            stack = [(start, -1)]
            circuit = []
            while stack:
                x, arrive = stack[-1]
                while nxt[x] < indptr[x + 1] and used[eid[nxt[x]]]:
                    nxt[x] += 1
                if nxt[x] < indptr[x + 1]:
                    e = int(eid[nxt[x]])
                    y = int(heads[nxt[x]])
                    used[e] = True
                    stack.append((y, e))
                else:
                    stack.pop()
                    if arrive >= 0:
                        circuit.append(arrive)
            for i, e in enumerate(circuit):
                if e < m:
                    side[e] = i & 1
    return side
