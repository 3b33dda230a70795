# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False, nonecheck=False, language_level=3
"""Compiled twin of the pure-Python kernel plus the bulk hot loops.

Same contract as vizing._pykernel.PyColorKernel: dense per-vertex color
tables (color -> edge id), full-palette missing/assigned bitsets with
truncated views, alternating-path walks and two-pass flips, and the same
abstract operation counting.  Module-level routines provide the Euler
split, an independent classical colorer, and repair_pass: the native
build_ufans inner loop (pair-at-center u-fan parking plus collection-aware
classical extension) against an in-kernel fan registry.
"""

import numpy as np

cimport numpy as cnp
from libc.string cimport memcpy, memset

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef cnp.uint64_t u64
ctypedef cnp.uint8_t u8


from vizing._pykernel import ColoringError


cdef inline int _ffs64(u64 x) nogil:
    cdef int k = 0
    if x == 0:
        return -1
    while not (x & 1):
        x >>= 1
        k += 1
    return k


cdef class CyColorKernel:
    cdef public Py_ssize_t n, m
    cdef public int mu
    cdef public long long ops
    cdef i64 _uncolored
    cdef Py_ssize_t fw            # 64-bit words per vertex bitset
    cdef i32[::1] colors
    cdef i32[::1] eu
    cdef i32[::1] ev
    cdef i32[::1] vdeg
    cdef i32[::1] pos             # (n+1) * (mu+1); stores edge id + 1
    cdef u64[::1] fmiss           # full-palette missing bits
    cdef u64[::1] fcu             # full-palette assigned bits
    cdef object _keepalive

    backend = "cy"

    def __init__(self, n, mu, u, v, deg, colors=None):
        cdef Py_ssize_t nn = int(n)
        cdef int cmu = int(mu)
        cdef Py_ssize_t need = (nn + 1) * (cmu + 1)
        if need > 700_000_000:
            raise ColoringError("dense color table too large; use the "
                                "pure-Python kernel for this instance")
        self.n = nn
        self.mu = cmu
        self.ops = 0
        u_arr = np.ascontiguousarray(u, dtype=np.int32)
        v_arr = np.ascontiguousarray(v, dtype=np.int32)
        self.m = u_arr.shape[0]
        deg_arr = np.ascontiguousarray(deg, dtype=np.int32)
        pos_arr = np.zeros(need, dtype=np.int32)
        self.fw = (cmu + 63) // 64 if cmu else 1
        fmiss_arr = np.zeros((nn + 1) * self.fw, dtype=np.uint64)
        fcu_arr = np.zeros((nn + 1) * self.fw, dtype=np.uint64)
        colors_arr = np.zeros(self.m, dtype=np.int32)
        self._keepalive = (u_arr, v_arr, deg_arr, pos_arr, fmiss_arr,
                           fcu_arr, colors_arr)
        self.eu = u_arr
        self.ev = v_arr
        self.vdeg = deg_arr
        self.pos = pos_arr
        self.fmiss = fmiss_arr
        self.fcu = fcu_arr
        self.colors = colors_arr
        self._uncolored = self.m
        cdef Py_ssize_t x
        for x in range(1, nn + 1):
            self._init_missing(x)
        if colors is not None:
            arr = np.ascontiguousarray(colors, dtype=np.int32)
            if arr.shape[0] != self.m:
                raise ColoringError("initial color array has wrong length")
            if self.m >= 4096:
                self._bulk_init_fast(arr)
            else:
                self._bulk_init(arr)

    cdef int _bulk_init(self, i32[::1] arr) except -1:
        cdef Py_ssize_t e
        for e in range(self.m):
            if arr[e]:
                if not 1 <= arr[e] <= self.mu:
                    raise ColoringError(
                        f"color {arr[e]} out of range 1..{self.mu}")
                self._set(e, arr[e])
        return 0

    def _bulk_init_fast(self, arr):
        """Vectorized init: scatter the color table chunk by chunk, then
        rebuild the missing-set words with one sequential table scan.
        Properness shows up as scatter collisions (fewer nonzero table
        entries than twice the colored-edge count)."""
        if int(arr.min(initial=0)) < 0 or int(arr.max(initial=0)) > self.mu:
            raise ColoringError(f"initial color out of range 1..{self.mu}")
        posv = np.asarray(self.pos)
        colv = np.asarray(self.colors)
        key = self.mu + 1
        uu = np.asarray(self.eu)
        vv = np.asarray(self.ev)
        k = 0
        chunk = 1 << 24
        for lo in range(0, self.m, chunk):
            part = arr[lo:lo + chunk]
            sel = np.nonzero(part > 0)[0]
            if not sel.shape[0]:
                continue
            k += int(sel.shape[0])
            eids = sel + lo
            colv[eids] = part[sel]
            cvals = part[sel].astype(np.int64)
            posv[uu[eids].astype(np.int64) * key + cvals] = eids + 1
            posv[vv[eids].astype(np.int64) * key + cvals] = eids + 1
        if int(np.count_nonzero(posv)) != 2 * k:
            raise ColoringError("initial color map is not proper")
        self._uncolored = self.m - k
        self._rebuild_missing()

    cdef void _rebuild_missing(self):
        cdef Py_ssize_t x, w, base, rowbase
        cdef int c, tl, rem, b
        cdef u64 bits
        cdef Py_ssize_t key = self.mu + 1
        for x in range(1, self.n + 1):
            base = x * self.fw
            rowbase = x * key
            rem = self.mu
            for w in range(self.fw):
                if rem >= 64:
                    bits = <u64>0xFFFFFFFFFFFFFFFF
                elif rem > 0:
                    bits = (<u64>1 << rem) - 1
                else:
                    bits = 0
                for b in range(64 if rem >= 64 else rem):
                    c = (<int>w << 6) + b + 1
                    if self.pos[rowbase + c]:
                        bits &= ~(<u64>1 << b)
                self.fmiss[base + w] = bits
                rem -= 64

    cdef void _init_missing(self, Py_ssize_t x):
        cdef Py_ssize_t base = x * self.fw
        cdef int bits = self.mu
        cdef Py_ssize_t w
        for w in range(self.fw):
            if bits >= 64:
                self.fmiss[base + w] = <u64>0xFFFFFFFFFFFFFFFF
                bits -= 64
            elif bits > 0:
                self.fmiss[base + w] = (<u64>1 << bits) - 1
                bits = 0
            else:
                self.fmiss[base + w] = 0

    # -- bit helpers -----------------------------------------------------------

    cdef inline int _trunc(self, Py_ssize_t x) nogil:
        cdef int t = self.vdeg[x] + 1
        return t if t < self.mu else self.mu

    cdef inline bint _miss_bit(self, Py_ssize_t x, int c) nogil:
        return (self.fmiss[x * self.fw + ((c - 1) >> 6)]
                >> ((c - 1) & 63)) & 1

    cdef inline void _set_miss(self, Py_ssize_t x, int c, bint val) nogil:
        cdef Py_ssize_t idx = x * self.fw + ((c - 1) >> 6)
        if val:
            self.fmiss[idx] |= (<u64>1 << ((c - 1) & 63))
        else:
            self.fmiss[idx] &= ~(<u64>1 << ((c - 1) & 63))

    cdef inline bint _cu_bit(self, Py_ssize_t x, int c) nogil:
        return (self.fcu[x * self.fw + ((c - 1) >> 6)] >> ((c - 1) & 63)) & 1

    cdef inline int _masked_min(self, Py_ssize_t x, bint exclude_cu) nogil:
        """Min color in the truncated missing set (minus assigned marks)."""
        cdef int tl = self._trunc(x)
        cdef Py_ssize_t base = x * self.fw
        cdef Py_ssize_t w, words = (tl + 63) >> 6
        cdef u64 bits
        cdef int rem, b
        for w in range(words):
            bits = self.fmiss[base + w]
            if exclude_cu:
                bits &= ~self.fcu[base + w]
            rem = tl - (<int>w << 6)
            if rem < 64:
                bits &= ((<u64>1 << rem) - 1)
            if bits:
                b = _ffs64(bits)
                return (<int>w << 6) + b + 1
        return 0

    cdef inline int _edge_at(self, Py_ssize_t x, int c) nogil:
        return self.pos[x * (self.mu + 1) + c] - 1

    # -- public queries -----------------------------------------------------------

    def degree(self, Py_ssize_t x):
        return self.vdeg[x]

    def trunc(self, Py_ssize_t x):
        return self.vdeg[x] + 1

    def color(self, Py_ssize_t e):
        return self.colors[e]

    def endpoints(self, Py_ssize_t e):
        return self.eu[e], self.ev[e]

    def uncolored_count(self):
        return self._uncolored

    def max_color_used(self):
        cdef int best = 0
        cdef Py_ssize_t e
        for e in range(self.m):
            if self.colors[e] > best:
                best = self.colors[e]
        return best

    def colors_snapshot(self):
        return np.asarray(self.colors).copy()

    def edge_at(self, Py_ssize_t x, int c):
        self.ops += 1
        return self._edge_at(x, c)

    def is_missing(self, Py_ssize_t x, int c):
        self.ops += 1
        return self.pos[x * (self.mu + 1) + c] == 0

    def miss_min(self, Py_ssize_t x):
        self.ops += 1
        cdef int c = self._masked_min(x, False)
        if c == 0:
            raise ColoringError(f"empty truncated missing set at vertex {x}")
        return c

    def miss_trunc(self, Py_ssize_t x):
        self.ops += 1
        cdef int tl = self._trunc(x)
        cdef int c
        out = []
        for c in range(1, tl + 1):
            if self._miss_bit(x, c):
                out.append(c)
        return out

    def cu_mark(self, Py_ssize_t x, int c):
        self.ops += 1
        cdef Py_ssize_t idx = x * self.fw + ((c - 1) >> 6)
        self.fcu[idx] |= (<u64>1 << ((c - 1) & 63))

    def cu_unmark(self, Py_ssize_t x, int c):
        self.ops += 1
        cdef Py_ssize_t idx = x * self.fw + ((c - 1) >> 6)
        self.fcu[idx] &= ~(<u64>1 << ((c - 1) & 63))

    def cu_marked(self, Py_ssize_t x, int c):
        self.ops += 1
        if c <= self.vdeg[x] + 1:
            return bool(self._cu_bit(x, c))
        return False

    def cbar_min(self, Py_ssize_t x):
        self.ops += 1
        cdef int c = self._masked_min(x, True)
        if c == 0:
            raise ColoringError(f"no available unassigned color at vertex {x}")
        return c

    def cbar_trunc(self, Py_ssize_t x):
        self.ops += 1
        cdef int tl = self._trunc(x)
        cdef int c
        out = []
        for c in range(1, tl + 1):
            if self._miss_bit(x, c) and not self._cu_bit(x, c):
                out.append(c)
        return out

    cdef inline int _common_free(self, Py_ssize_t x, Py_ssize_t y) nogil:
        cdef Py_ssize_t bx = x * self.fw, by = y * self.fw
        cdef Py_ssize_t w
        cdef u64 bits
        for w in range(self.fw):
            bits = ((self.fmiss[bx + w] & ~self.fcu[bx + w])
                    & (self.fmiss[by + w] & ~self.fcu[by + w]))
            if bits:
                return (<int>w << 6) + _ffs64(bits) + 1
        return 0

    def common_free(self, Py_ssize_t x, Py_ssize_t y):
        self.ops += 1
        return self._common_free(x, y)

    cdef inline bint _avail(self, Py_ssize_t x, int c) nogil:
        return self._miss_bit(x, c) and not self._cu_bit(x, c)

    def is_available(self, Py_ssize_t x, int c):
        self.ops += 1
        return bool(self._avail(x, c))

    # -- mutation --------------------------------------------------------------------

    cdef int _set(self, Py_ssize_t e, int c) except -1:
        cdef Py_ssize_t a = self.eu[e], b = self.ev[e]
        cdef Py_ssize_t key = self.mu + 1
        if self.colors[e]:
            raise ColoringError(f"edge {e} already colored {self.colors[e]}")
        self.ops += 2
        if self.pos[a * key + c]:
            raise ColoringError(f"color {c} already present at vertex {a}")
        if self.pos[b * key + c]:
            raise ColoringError(f"color {c} already present at vertex {b}")
        self.ops += 2
        self.pos[a * key + c] = e + 1
        self.pos[b * key + c] = e + 1
        self.colors[e] = c
        self._uncolored -= 1
        self._set_miss(a, c, False)
        self._set_miss(b, c, False)
        if c <= self.vdeg[a] + 1:
            self.ops += 1
        if c <= self.vdeg[b] + 1:
            self.ops += 1
        return 0

    cdef int _unset(self, Py_ssize_t e) except -1:
        cdef int old = self.colors[e]
        if old == 0:
            return 0
        cdef Py_ssize_t a = self.eu[e], b = self.ev[e]
        cdef Py_ssize_t key = self.mu + 1
        self.ops += 2
        self.pos[a * key + old] = 0
        self.pos[b * key + old] = 0
        self.colors[e] = 0
        self._uncolored += 1
        self._set_miss(a, old, True)
        self._set_miss(b, old, True)
        if old <= self.vdeg[a] + 1:
            self.ops += 1
        if old <= self.vdeg[b] + 1:
            self.ops += 1
        return 0

    def set_color(self, Py_ssize_t e, c):
        cdef int cc = int(c)
        if cc == self.colors[e]:
            return
        if cc:
            if not 1 <= cc <= self.mu:
                raise ColoringError(f"color {cc} out of range 1..{self.mu}")
            self._set(e, cc)
        else:
            self._unset(e)

    # -- alternating paths ----------------------------------------------------------

    cdef int _start_color(self, Py_ssize_t x, int a, int b) except -2:
        cdef bint ma = self.pos[x * (self.mu + 1) + a] == 0
        cdef bint mb = self.pos[x * (self.mu + 1) + b] == 0
        self.ops += 2
        if not (ma or mb):
            raise ColoringError(f"vertex {x} misses neither {a} nor {b}")
        if ma and mb:
            return 0
        return b if ma else a

    def walk(self, Py_ssize_t x, int a, int b):
        cdef int c = self._start_color(x, a, b)
        cdef Py_ssize_t cur = x
        cdef Py_ssize_t length = 0
        cdef int e
        if c == 0:
            return x, 0
        while True:
            self.ops += 1
            e = self._edge_at(cur, c)
            if e < 0:
                return cur, length
            cur = self.ev[e] if cur == self.eu[e] else self.eu[e]
            c = a + b - c
            length += 1

    def walk_collect(self, Py_ssize_t x, int a, int b):
        cdef int c = self._start_color(x, a, b)
        cdef Py_ssize_t cur = x
        cdef int e
        edges = []
        if c == 0:
            return x, edges
        while True:
            self.ops += 1
            e = self._edge_at(cur, c)
            if e < 0:
                return cur, edges
            edges.append(e)
            cur = self.ev[e] if cur == self.eu[e] else self.eu[e]
            c = a + b - c

    def flip_seq(self, edges, a, b):
        cdef int aa = int(a), bb = int(b)
        cdef Py_ssize_t e
        cdef int old, new
        cdef Py_ssize_t key = self.mu + 1
        cdef Py_ssize_t ue, ve
        olds = [self.colors[e] for e in edges]
        for e in edges:
            old = self.colors[e]
            ue, ve = self.eu[e], self.ev[e]
            self.ops += 2
            self.pos[ue * key + old] = 0
            self.pos[ve * key + old] = 0
            self.colors[e] = 0
            self._set_miss(ue, old, True)
            self._set_miss(ve, old, True)
            if old <= self.vdeg[ue] + 1:
                self.ops += 1
            if old <= self.vdeg[ve] + 1:
                self.ops += 1
        for e, old in zip(edges, olds):
            new = aa + bb - old
            ue, ve = self.eu[e], self.ev[e]
            self.ops += 2
            if self.pos[ue * key + new] or self.pos[ve * key + new]:
                raise ColoringError(f"flip would duplicate color {new} on edge {e}")
            self.pos[ue * key + new] = e + 1
            self.pos[ve * key + new] = e + 1
            self.colors[e] = new
            self._set_miss(ue, new, False)
            self._set_miss(ve, new, False)
            if new <= self.vdeg[ue] + 1:
                self.ops += 1
            if new <= self.vdeg[ve] + 1:
                self.ops += 1

    def walk_flip(self, Py_ssize_t x, int a, int b):
        y, edges = self.walk_collect(x, a, b)
        self.flip_seq(edges, a, b)
        return y, len(edges)

    # -- cloning / auditing ------------------------------------------------------------

    def copy(self):
        cdef CyColorKernel k = CyColorKernel.__new__(CyColorKernel)
        k.n, k.m, k.mu, k.ops = self.n, self.m, self.mu, 0
        k.fw = self.fw
        k._uncolored = self._uncolored
        u_arr, v_arr, deg_arr = self._keepalive[0], self._keepalive[1], self._keepalive[2]
        pos_arr = np.asarray(self.pos).copy()
        fmiss_arr = np.asarray(self.fmiss).copy()
        fcu_arr = np.asarray(self.fcu).copy()
        colors_arr = np.asarray(self.colors).copy()
        k._keepalive = (u_arr, v_arr, deg_arr, pos_arr, fmiss_arr, fcu_arr,
                        colors_arr)
        k.eu, k.ev, k.vdeg = u_arr, v_arr, deg_arr
        k.pos, k.fmiss, k.fcu, k.colors = pos_arr, fmiss_arr, fcu_arr, colors_arr
        return k

    def fingerprint(self):
        cdef Py_ssize_t key = self.mu + 1
        cdef Py_ssize_t x
        cdef int c, tl
        pos_items = []
        for x in range(1, self.n + 1):
            for c in range(1, self.mu + 1):
                if self.pos[x * key + c]:
                    pos_items.append((x * key + c, self.pos[x * key + c] - 1))
        missbits = [0] * (self.n + 1)
        cubits = [0] * (self.n + 1)
        for x in range(1, self.n + 1):
            tl = self._trunc(x)
            mb = 0
            cb = 0
            for c in range(1, tl + 1):
                if self._miss_bit(x, c):
                    mb |= 1 << (c - 1)
                if self._cu_bit(x, c):
                    cb |= 1 << (c - 1)
            missbits[x] = mb
            cubits[x] = cb
        return (tuple(np.asarray(self.colors).tolist()),
                frozenset(pos_items), tuple(missbits), tuple(cubits))

    def consistency_errors(self):
        cdef Py_ssize_t key = self.mu + 1
        errors = []
        expect_pos = {}
        colors = np.asarray(self.colors)
        for e in range(self.m):
            c = int(colors[e])
            if not c:
                continue
            if not 1 <= c <= self.mu:
                errors.append(f"edge {e}: color {c} out of range")
                continue
            for x in (int(self.eu[e]), int(self.ev[e])):
                k = x * key + c
                if k in expect_pos:
                    errors.append(f"vertex {x}: color {c} on edges "
                                  f"{expect_pos[k]} and {e}")
                expect_pos[k] = e
        actual = {}
        for x in range(1, self.n + 1):
            for c in range(1, self.mu + 1):
                if self.pos[x * key + c]:
                    actual[x * key + c] = self.pos[x * key + c] - 1
        if expect_pos != actual:
            for k in set(expect_pos) ^ set(actual):
                x, c = divmod(k, key)
                errors.append(f"phi' mismatch at vertex {x} color {c}")
            for k in set(expect_pos) & set(actual):
                if expect_pos[k] != actual[k]:
                    x, c = divmod(k, key)
                    errors.append(f"phi' stale entry at vertex {x} color {c}")
        for x in range(1, self.n + 1):
            tl = self._trunc(x)
            for c in range(1, tl + 1):
                want = (x * key + c) not in expect_pos
                if bool(self._miss_bit(x, c)) != want:
                    errors.append(f"missing-set mismatch at vertex {x}")
                    break
        uncol = int((colors == 0).sum())
        if uncol != self._uncolored:
            errors.append("uncolored counter out of sync")
        return errors

    def _debug_set_pos(self, x, c, e):
        cdef Py_ssize_t key = self.mu + 1
        if e is None:
            self.pos[x * key + c] = 0
        else:
            self.pos[x * key + c] = int(e) + 1


# -- Euler split ---------------------------------------------------------------------


def euler_split(n, u, v, deg):
    """Alternating Euler-circuit split; side (0/1) per edge.

    Slot-packed layout: each adjacency slot holds (head << 32) | edge; a
    per-edge used bitset (cache-resident) marks consumption, so the walk
    touches two compact arrays plus the per-vertex cursors.
    """
    cdef Py_ssize_t nn = int(n)
    u_arr = np.ascontiguousarray(u, dtype=np.int32)
    v_arr = np.ascontiguousarray(v, dtype=np.int32)
    cdef i32[::1] cu = u_arr
    cdef i32[::1] cv = v_arr
    cdef Py_ssize_t m = u_arr.shape[0]
    side_arr = np.zeros(m, dtype=np.uint8)
    cdef u8[::1] side = side_arr
    if m == 0:
        return side_arr
    deg_arr = np.ascontiguousarray(deg, dtype=np.int64)
    cdef i64[::1] dg = deg_arr

    cdef Py_ssize_t x, e, k
    cdef Py_ssize_t n_odd = 0
    for x in range(1, nn + 1):
        if dg[x] & 1:
            n_odd += 1
    cdef Py_ssize_t total = m + n_odd

    indptr_arr = np.zeros(nn + 2, dtype=np.int64)
    cdef i64[::1] indptr = indptr_arr
    indptr[1] = n_odd
    for x in range(1, nn + 1):
        indptr[x + 1] = indptr[x] + dg[x] + (1 if dg[x] & 1 else 0)
    slots_arr = np.empty(2 * total, dtype=np.int64)
    cdef i64[::1] slots = slots_arr
    cur_arr = indptr_arr[:-1].copy()
    cdef i64[::1] cur = cur_arr

    for e in range(m):
        slots[cur[cu[e]]] = ((<i64>cv[e]) << 32) | e
        cur[cu[e]] += 1
        slots[cur[cv[e]]] = ((<i64>cu[e]) << 32) | e
        cur[cv[e]] += 1
    k = 0
    for x in range(1, nn + 1):
        if dg[x] & 1:
            e = m + k
            slots[cur[0]] = ((<i64>x) << 32) | e
            cur[0] += 1
            slots[cur[x]] = <i64>e  # head is the virtual vertex 0
            cur[x] += 1
            k += 1

    used_arr = np.zeros((total + 63) // 64, dtype=np.uint64)
    cdef u64[::1] used = used_arr
    nxt_arr = indptr_arr[:-1].copy()
    cdef i64[::1] nxt = nxt_arr

    order_arr = (np.argsort(
        np.asarray(deg_arr[1:]) * (nn + 2) + np.arange(1, nn + 1),
        kind="stable").astype(np.int64) + 1)
    cdef i64[::1] order = order_arr

    stack_arr = np.empty(total + 2, dtype=np.int64)  # (vertex << 32) | (edge+1)
    cdef i64[::1] stack = stack_arr
    cdef Py_ssize_t sp, clen, start, arrive, oi
    cdef Py_ssize_t ee, y
    cdef i64 val

    starts_arr = np.empty(nn + 1, dtype=np.int64)
    cdef i64[::1] starts = starts_arr
    cdef Py_ssize_t ns = 0
    if n_odd:
        starts[0] = 0
        ns = 1
    for oi in range(nn):
        starts[ns] = order[oi]
        ns += 1
    cdef Py_ssize_t si
    with nogil:
        for si in range(ns):
            start = starts[si]
            while True:
                while nxt[start] < indptr[start + 1]:
                    ee = slots[nxt[start]] & <i64>0xFFFFFFFF
                    if not (used[ee >> 6] >> (ee & 63)) & 1:
                        break
                    nxt[start] += 1
                if nxt[start] >= indptr[start + 1]:
                    break
                sp = 0
                stack[0] = (<i64>start) << 32  # arrival edge encoded as 0
                clen = 0
                while sp >= 0:
                    x = stack[sp] >> 32
                    arrive = (stack[sp] & <i64>0xFFFFFFFF) - 1
                    while nxt[x] < indptr[x + 1]:
                        ee = slots[nxt[x]] & <i64>0xFFFFFFFF
                        if not (used[ee >> 6] >> (ee & 63)) & 1:
                            break
                        nxt[x] += 1
                    if nxt[x] < indptr[x + 1]:
                        val = slots[nxt[x]]
                        ee = val & <i64>0xFFFFFFFF
                        y = val >> 32
                        used[ee >> 6] |= (<u64>1 << (ee & 63))
                        sp += 1
                        stack[sp] = ((<i64>y) << 32) | (ee + 1)
                    else:
                        sp -= 1
                        if arrive >= 0:
                            # position parity in the reversed pop order
                            if arrive < m:
                                side[arrive] = <u8>(clen & 1)
                            clen += 1
    return side_arr


# -- independent classical colorer ------------------------------------------------------


def classical_color_core(n, mu, u, v):
    """Textbook Vizing coloring; self-contained structures, returns colors."""
    cdef Py_ssize_t nn = int(n)
    cdef int cmu = int(mu)
    u_arr = np.ascontiguousarray(u, dtype=np.int32)
    v_arr = np.ascontiguousarray(v, dtype=np.int32)
    cdef i32[::1] eu = u_arr
    cdef i32[::1] ev = v_arr
    cdef Py_ssize_t m = u_arr.shape[0]
    colors_arr = np.zeros(m, dtype=np.int32)
    cdef i32[::1] colors = colors_arr
    cdef Py_ssize_t need = (nn + 1) * (cmu + 1)
    if need > 700_000_000:
        raise MemoryError("classical table too large")
    where_arr = np.zeros(need, dtype=np.int32)
    cdef i32[::1] where = where_arr
    cdef Py_ssize_t fw = (cmu + 63) // 64 if cmu else 1
    free_arr = np.zeros((nn + 1) * fw, dtype=np.uint64)
    cdef u64[::1] free = free_arr
    cdef Py_ssize_t x, w
    cdef int bits
    for x in range(nn + 1):
        bits = cmu
        for w in range(fw):
            if bits >= 64:
                free[x * fw + w] = <u64>0xFFFFFFFFFFFFFFFF
                bits -= 64
            elif bits > 0:
                free[x * fw + w] = (<u64>1 << bits) - 1
                bits = 0
            else:
                free[x * fw + w] = 0

    cdef Py_ssize_t key = cmu + 1
    # fan scratch
    leaves_arr = np.empty(cmu + 2, dtype=np.int64)
    slot_arr = np.empty(cmu + 2, dtype=np.int64)
    chosen_arr = np.zeros(cmu + 1, dtype=np.int64)
    stamp_arr = np.zeros(cmu + 1, dtype=np.int64)
    cdef i64[::1] leaves = leaves_arr
    cdef i64[::1] slot = slot_arr
    cdef i64[::1] chosen = chosen_arr
    cdef i64[::1] stamp = stamp_arr
    chain_obj = np.empty(1024, dtype=np.int64)
    cdef i64[::1] chain = chain_obj

    cdef Py_ssize_t e, a, b, anchor, y0, yt, t, i, kk, far
    cdef int c, beta, alpha, old, newc
    cdef i64 tick = 0

    def _grow_chain():
        nonlocal chain_obj
        chain_obj = np.concatenate([chain_obj, np.empty(len(chain_obj), dtype=np.int64)])
        return chain_obj

    for e in range(m):
        a = eu[e]
        b = ev[e]
        c = _cmn(free, fw, a, b)
        if c:
            _asg(where, free, colors, key, fw, eu, ev, e, c)
            continue
        tick += 1
        anchor = a if _nfree(free, fw, a, cmu) >= _nfree(free, fw, b, cmu) else b
        y0 = b if anchor == a else a
        leaves[0] = y0
        slot[0] = e
        t = 0
        while True:
            yt = leaves[t]
            beta = _minfree(free, fw, yt)
            if _bit(free, fw, anchor, beta):
                _rotate_cls(where, free, colors, key, fw, eu, ev, slot, leaves, t)
                _asg(where, free, colors, key, fw, eu, ev, slot[t], beta)
                break
            if stamp[beta] == tick:
                i = chosen[beta]
                alpha = _minfree(free, fw, anchor)
                far = _chain_end(where, free, key, fw, eu, ev, leaves[i], alpha, beta)
                if far != anchor:
                    kk = i
                else:
                    kk = t
                _rotate_cls(where, free, colors, key, fw, eu, ev, slot, leaves, kk)
                # walk + flip the {alpha,beta}-chain from leaves[kk]
                chain_len = 0
                cur = leaves[kk]
                cc = beta if _bit(free, fw, cur, alpha) else alpha
                if _bit(free, fw, cur, alpha) and _bit(free, fw, cur, beta):
                    cc = 0
                while cc and where[cur * key + cc]:
                    ee2 = where[cur * key + cc] - 1
                    if chain_len >= chain.shape[0]:
                        chain_obj2 = _grow_chain()
                        chain = chain_obj2
                    chain[chain_len] = ee2
                    chain_len += 1
                    cur = ev[ee2] if cur == eu[ee2] else eu[ee2]
                    cc = alpha + beta - cc
                for i in range(chain_len):
                    ee2 = chain[i]
                    old = colors[ee2]
                    _unasg(where, free, colors, key, fw, eu, ev, ee2)
                    colors[ee2] = -(alpha + beta - old)   # staged
                for i in range(chain_len):
                    ee2 = chain[i]
                    newc = -colors[ee2]
                    colors[ee2] = 0
                    _asg(where, free, colors, key, fw, eu, ev, ee2, newc)
                _asg(where, free, colors, key, fw, eu, ev, slot[kk], alpha)
                break
            stamp[beta] = tick
            chosen[beta] = t
            t += 1
            ee = where[anchor * key + beta] - 1
            leaves[t] = ev[ee] if anchor == eu[ee] else eu[ee]
            slot[t] = ee
    return colors_arr


cdef inline bint _bit(u64[::1] words, Py_ssize_t fw, Py_ssize_t x, int c) nogil:
    return (words[x * fw + ((c - 1) >> 6)] >> ((c - 1) & 63)) & 1

cdef inline void _setbit(u64[::1] words, Py_ssize_t fw, Py_ssize_t x, int c,
                         bint val) nogil:
    cdef Py_ssize_t idx = x * fw + ((c - 1) >> 6)
    if val:
        words[idx] |= (<u64>1 << ((c - 1) & 63))
    else:
        words[idx] &= ~(<u64>1 << ((c - 1) & 63))

cdef inline int _minfree(u64[::1] free, Py_ssize_t fw, Py_ssize_t x) nogil:
    cdef Py_ssize_t w
    for w in range(fw):
        if free[x * fw + w]:
            return (<int>w << 6) + _ffs64(free[x * fw + w]) + 1
    return 0

cdef inline int _cmn(u64[::1] free, Py_ssize_t fw, Py_ssize_t a,
                     Py_ssize_t b) nogil:
    cdef Py_ssize_t w
    cdef u64 bits
    for w in range(fw):
        bits = free[a * fw + w] & free[b * fw + w]
        if bits:
            return (<int>w << 6) + _ffs64(bits) + 1
    return 0

cdef inline int _nfree(u64[::1] free, Py_ssize_t fw, Py_ssize_t x,
                       int cmu) nogil:
    cdef Py_ssize_t w
    cdef int total = 0
    cdef u64 bits
    for w in range(fw):
        bits = free[x * fw + w]
        while bits:
            bits &= bits - 1
            total += 1
    return total

cdef inline void _asg(i32[::1] where, u64[::1] free, i32[::1] colors,
                      Py_ssize_t key, Py_ssize_t fw, i32[::1] eu,
                      i32[::1] ev, Py_ssize_t e, int c) nogil:
    cdef Py_ssize_t a = eu[e], b = ev[e]
    where[a * key + c] = e + 1
    where[b * key + c] = e + 1
    _setbit(free, fw, a, c, False)
    _setbit(free, fw, b, c, False)
    colors[e] = c

cdef inline void _unasg(i32[::1] where, u64[::1] free, i32[::1] colors,
                        Py_ssize_t key, Py_ssize_t fw, i32[::1] eu,
                        i32[::1] ev, Py_ssize_t e) nogil:
    cdef int c = colors[e]
    cdef Py_ssize_t a = eu[e], b = ev[e]
    where[a * key + c] = 0
    where[b * key + c] = 0
    _setbit(free, fw, a, c, True)
    _setbit(free, fw, b, c, True)
    colors[e] = 0

cdef void _rotate_cls(i32[::1] where, u64[::1] free, i32[::1] colors,
                      Py_ssize_t key, Py_ssize_t fw, i32[::1] eu,
                      i32[::1] ev, i64[::1] slot, i64[::1] leaves,
                      Py_ssize_t t) nogil:
    cdef Py_ssize_t i
    cdef int c
    for i in range(1, t + 1):
        c = colors[slot[i]]
        _unasg(where, free, colors, key, fw, eu, ev, slot[i])
        _asg(where, free, colors, key, fw, eu, ev, slot[i - 1], c)

cdef int _chain_end(i32[::1] where, u64[::1] free, Py_ssize_t key,
                    Py_ssize_t fw, i32[::1] eu, i32[::1] ev,
                    Py_ssize_t start, int a, int b) nogil:
    cdef bint fa = _bit(free, fw, start, a)
    cdef bint fb = _bit(free, fw, start, b)
    cdef Py_ssize_t x = start
    cdef int cur
    cdef Py_ssize_t e
    if fa and fb:
        return <int>start
    cur = a if fb else b
    while where[x * key + cur]:
        e = where[x * key + cur] - 1
        x = ev[e] if x == eu[e] else eu[e]
        cur = a + b - cur
    return <int>x


# -- native build_ufans inner loop ----------------------------------------------------


cdef class _Repair:
    """Fan registry + queues for repair_pass, twin of vizing.ufans."""
    cdef CyColorKernel k
    cdef i64[::1] fu, fv, fw, fev, few
    cdef i32[::1] rcu, rcv, rcw
    cdef u8[::1] alive
    cdef Py_ssize_t nf, maxf
    cdef i64[::1] hkey
    cdef i32[::1] hval
    cdef Py_ssize_t hmask
    cdef i64[::1] queue
    cdef Py_ssize_t qhead, qtail
    cdef i64[::1] pbuf
    cdef Py_ssize_t pcap
    cdef i64[::1] leaves, slot
    cdef i64[::1] stamp
    cdef i64[::1] chosen
    cdef i64 tick
    cdef object _hold

    def __init__(self, CyColorKernel kern, Py_ssize_t lam):
        self.k = kern
        self.maxf = lam // 2 + 4
        cdef Py_ssize_t hsz = 64
        while hsz < 8 * self.maxf:
            hsz <<= 1
        fu = np.zeros(self.maxf, dtype=np.int64)
        fv = np.zeros(self.maxf, dtype=np.int64)
        fw = np.zeros(self.maxf, dtype=np.int64)
        fev = np.zeros(self.maxf, dtype=np.int64)
        few = np.zeros(self.maxf, dtype=np.int64)
        rcu = np.zeros(self.maxf, dtype=np.int32)
        rcv = np.zeros(self.maxf, dtype=np.int32)
        rcw = np.zeros(self.maxf, dtype=np.int32)
        alive = np.zeros(self.maxf, dtype=np.uint8)
        hkey = np.full(hsz, -1, dtype=np.int64)
        hval = np.zeros(hsz, dtype=np.int32)
        queue = np.zeros(2 * lam + 16, dtype=np.int64)
        pbuf = np.zeros(4096, dtype=np.int64)
        leaves = np.zeros(kern.mu + 3, dtype=np.int64)
        slot = np.zeros(kern.mu + 3, dtype=np.int64)
        stamp = np.zeros(kern.mu + 2, dtype=np.int64)
        chosen = np.zeros(kern.mu + 2, dtype=np.int64)
        self._hold = (fu, fv, fw, fev, few, rcu, rcv, rcw, alive, hkey,
                      hval, queue, pbuf, leaves, slot, stamp, chosen)
        self.fu, self.fv, self.fw, self.fev, self.few = fu, fv, fw, fev, few
        self.rcu, self.rcv, self.rcw, self.alive = rcu, rcv, rcw, alive
        self.hkey, self.hval = hkey, hval
        self.hmask = hsz - 1
        self.queue = queue
        self.qhead = self.qtail = 0
        self.pbuf = pbuf
        self.pcap = 4096
        self.leaves, self.slot = leaves, slot
        self.stamp, self.chosen = stamp, chosen
        self.tick = 0
        self.nf = 0

    # -- psi hash: (vertex, color) -> fan index --------------------------------

    cdef inline Py_ssize_t _slot_for(self, i64 key):
        cdef u64 h = (<u64>key) * <u64>0x9E3779B97F4A7C15
        return <Py_ssize_t>(h >> 32) & self.hmask

    cdef int psi_find(self, i64 x, int c):
        cdef i64 key = x * (self.k.mu + 1) + c
        cdef Py_ssize_t i = self._slot_for(key)
        while True:
            if self.hkey[i] == -1:
                return -1
            if self.hkey[i] == key:
                return self.hval[i]
            i = (i + 1) & self.hmask

    cdef void psi_put(self, i64 x, int c, int idx):
        cdef i64 key = x * (self.k.mu + 1) + c
        cdef Py_ssize_t i = self._slot_for(key)
        while True:
            if self.hkey[i] == -1 or self.hkey[i] == -2 or self.hkey[i] == key:
                self.hkey[i] = key
                self.hval[i] = idx
                return
            i = (i + 1) & self.hmask

    cdef void psi_del(self, i64 x, int c):
        cdef i64 key = x * (self.k.mu + 1) + c
        cdef Py_ssize_t i = self._slot_for(key)
        while True:
            if self.hkey[i] == -1:
                return
            if self.hkey[i] == key:
                self.hkey[i] = -2
                return
            i = (i + 1) & self.hmask

    # -- registry ops ------------------------------------------------------------

    cdef void cu_set(self, i64 x, int c, bint val):
        cdef Py_ssize_t idx = x * self.k.fw + ((c - 1) >> 6)
        if val:
            self.k.fcu[idx] |= (<u64>1 << ((c - 1) & 63))
        else:
            self.k.fcu[idx] &= ~(<u64>1 << ((c - 1) & 63))

    cdef int fan_create(self, i64 u, i64 v, i64 w, int cu, int cv, int cw,
                        i64 ev, i64 ew) except -1:
        cdef Py_ssize_t idx = self.nf
        if idx >= self.maxf:
            raise AssertionError("fan registry overflow")
        self.nf += 1
        self.fu[idx] = u
        self.fv[idx] = v
        self.fw[idx] = w
        self.rcu[idx] = cu
        self.rcv[idx] = cv
        self.rcw[idx] = cw
        self.fev[idx] = ev
        self.few[idx] = ew
        self.alive[idx] = 1
        self.psi_put(u, cu, <int>idx)
        self.psi_put(v, cv, <int>idx)
        self.psi_put(w, cw, <int>idx)
        self.cu_set(u, cu, True)
        self.cu_set(v, cv, True)
        self.cu_set(w, cw, True)
        return <int>idx

    cdef void fan_delete(self, int idx):
        if not self.alive[idx]:
            return
        self.alive[idx] = 0
        self.psi_del(self.fu[idx], self.rcu[idx])
        self.psi_del(self.fv[idx], self.rcv[idx])
        self.psi_del(self.fw[idx], self.rcw[idx])
        self.cu_set(self.fu[idx], self.rcu[idx], False)
        self.cu_set(self.fv[idx], self.rcv[idx], False)
        self.cu_set(self.fw[idx], self.rcw[idx], False)
        self.queue[self.qtail] = self.fev[idx]
        self.qtail += 1
        self.queue[self.qtail] = self.few[idx]
        self.qtail += 1

    cdef void claim(self, i64 x, int c):
        cdef int idx = self.psi_find(x, c)
        if idx >= 0:
            self.fan_delete(idx)

    cdef int fan_color_at(self, int idx, i64 z):
        if self.fu[idx] == z:
            return self.rcu[idx]
        if self.fv[idx] == z:
            return self.rcv[idx]
        return self.rcw[idx]

    cdef void fan_move(self, int idx, i64 z, int old, int new):
        self.psi_put(z, new, idx)
        if self.fu[idx] == z and self.rcu[idx] == old:
            self.rcu[idx] = new
        elif self.fv[idx] == z and self.rcv[idx] == old:
            self.rcv[idx] = new
        elif self.fw[idx] == z and self.rcw[idx] == old:
            self.rcw[idx] = new
        self.cu_set(z, old, False)
        self.cu_set(z, new, True)

    cdef inline bint fan_damaged(self, int idx):
        return not (self.rcu[idx] != self.rcv[idx]
                    and self.rcv[idx] == self.rcw[idx])

    # -- fan-aware path flip -------------------------------------------------------

    cdef void _grow_pbuf(self):
        arr = np.zeros(self.pcap * 2, dtype=np.int64)
        arr[:self.pcap] = np.asarray(self.pbuf)
        hold = list(self._hold)
        hold[12] = arr
        self._hold = tuple(hold)
        self.pbuf = arr
        self.pcap *= 2

    cdef i64 flip_fan_aware(self, i64 x, int a, int b) except -1:
        """Flip the maximal {a,b}-path from x, repairing registry fans."""
        cdef CyColorKernel k = self.k
        cdef Py_ssize_t key = k.mu + 1
        cdef bint ma = k.pos[x * key + a] == 0
        cdef bint mb = k.pos[x * key + b] == 0
        cdef int c
        cdef Py_ssize_t ln = 0
        cdef i64 cur = x, y
        cdef int e
        if ma and mb:
            y = x
        else:
            c = b if ma else a
            while True:
                e = k._edge_at(cur, c)
                if e < 0:
                    break
                if ln >= self.pcap:
                    self._grow_pbuf()
                self.pbuf[ln] = e
                ln += 1
                cur = k.ev[e] if cur == k.eu[e] else k.eu[e]
                c = a + b - c
            y = cur
        # two-pass flip
        cdef Py_ssize_t i
        cdef int old, new
        cdef Py_ssize_t ue, ve
        for i in range(ln):
            e = <int>self.pbuf[i]
            old = k.colors[e]
            ue, ve = k.eu[e], k.ev[e]
            k.pos[ue * key + old] = 0
            k.pos[ve * key + old] = 0
            k.colors[e] = -old
            k._set_miss(ue, old, True)
            k._set_miss(ve, old, True)
        for i in range(ln):
            e = <int>self.pbuf[i]
            old = -k.colors[e]
            new = a + b - old
            ue, ve = k.eu[e], k.ev[e]
            k.pos[ue * key + new] = e + 1
            k.pos[ve * key + new] = e + 1
            k.colors[e] = new
            k._set_miss(ue, new, False)
            k._set_miss(ve, new, False)
        # endpoint fan repairs
        cdef bint empty = ln == 0
        cdef i64 z
        cdef Py_ssize_t rep, nmoves
        cdef int f1, m_old1, m_new1, f2, m_old2, m_new2, cc
        for rep in range(2):
            z = x if rep == 0 else y
            if rep == 1 and y == x:
                break
            nmoves = 0
            f1 = f2 = -1
            for cc in (a, b):
                idx = self.psi_find(z, cc)
                if idx < 0:
                    continue
                if empty or k.pos[z * key + cc] != 0:
                    if nmoves == 0:
                        f1, m_old1, m_new1 = idx, cc, a + b - cc
                    else:
                        f2, m_old2, m_new2 = idx, cc, a + b - cc
                    nmoves += 1
            if nmoves >= 1:
                self.psi_del(z, m_old1)
            if nmoves == 2:
                self.psi_del(z, m_old2)
            if nmoves >= 1:
                self.fan_move(f1, z, m_old1, m_new1)
                if self.fan_damaged(f1):
                    self.fan_delete(f1)
            if nmoves == 2:
                self.fan_move(f2, z, m_old2, m_new2)
                if self.fan_damaged(f2):
                    self.fan_delete(f2)
        return y

    # -- slot rotation ----------------------------------------------------------------

    cdef int rotate(self, Py_ssize_t t) except -1:
        cdef CyColorKernel k = self.k
        cdef Py_ssize_t i
        cdef int c
        for i in range(1, t + 1):
            c = k.colors[self.slot[i]]
            k._unset(self.slot[i])
            self.claim(self.leaves[i - 1], c)
            k._set(self.slot[i - 1], c)
        return 0

    # -- classical extension (collection-aware) ------------------------------------------

    cdef int extend_one(self, i64 e) except -1:
        cdef CyColorKernel k = self.k
        cdef Py_ssize_t key = k.mu + 1
        cdef i64 a = k.eu[e], b = k.ev[e]
        cdef int c = k._common_free(a, b)
        if c:
            k._set(e, c)
            return 0
        cdef i64 x, y0, yt
        cdef int ta = k.vdeg[a] + 1, tb = k.vdeg[b] + 1
        if ta <= tb:
            x, y0 = a, b
        else:
            x, y0 = b, a
        self.tick += 1
        self.leaves[0] = y0
        self.slot[0] = e
        cdef Py_ssize_t t = 0
        cdef int beta, alpha
        cdef Py_ssize_t i, kk
        cdef int nxt
        cdef i64 far
        while True:
            yt = self.leaves[t]
            beta = k._masked_min(yt, False)
            if k.pos[x * key + beta] == 0:
                self.rotate(t)
                self.claim(x, beta)
                self.claim(yt, beta)
                k._set(self.slot[t], beta)
                return 0
            if self.stamp[beta] == self.tick:
                i = self.chosen[beta]
                alpha = k._masked_min(x, False)
                far = self._walk_end(self.leaves[i], alpha, beta)
                kk = i if far != x else t
                self.rotate(kk)
                far = self.flip_fan_aware(self.leaves[kk], alpha, beta)
                if far == x:
                    raise AssertionError("both Vizing chains end at the anchor")
                self.claim(x, alpha)
                self.claim(self.leaves[kk], alpha)
                k._set(self.slot[kk], alpha)
                return 0
            self.stamp[beta] = self.tick
            self.chosen[beta] = t
            nxt = k._edge_at(x, beta)
            t += 1
            self.leaves[t] = k.ev[nxt] if x == k.eu[nxt] else k.eu[nxt]
            self.slot[t] = nxt
        return 0

    cdef i64 _walk_end(self, i64 x, int a, int b):
        cdef CyColorKernel k = self.k
        cdef Py_ssize_t key = k.mu + 1
        cdef bint ma = k.pos[x * key + a] == 0
        cdef bint mb = k.pos[x * key + b] == 0
        cdef i64 cur = x
        cdef int c, e
        if ma and mb:
            return x
        c = b if ma else a
        while True:
            e = k._edge_at(cur, c)
            if e < 0:
                return cur
            cur = k.ev[e] if cur == k.eu[e] else k.eu[e]
            c = a + b - c

    # -- the pair protocol ------------------------------------------------------------------

    cdef int pick_center_color(self, i64 u, int beta):
        cdef CyColorKernel k = self.k
        cdef int tl = k._trunc(u)
        cdef Py_ssize_t base = u * k.fw
        cdef Py_ssize_t w, words = (tl + 63) >> 6
        cdef u64 bits
        cdef int rem, c
        for w in range(words):
            bits = k.fmiss[base + w] & ~k.fcu[base + w]
            rem = tl - (<int>w << 6)
            if rem < 64:
                bits &= ((<u64>1 << rem) - 1)
            while bits:
                c = (<int>w << 6) + _ffs64(bits) + 1
                bits &= bits - 1
                if c != beta:
                    return c
        return 0

    cdef bint try_pair(self, i64 u, i64 e1, i64 e2) except? 0:
        cdef CyColorKernel k = self.k
        cdef i64 v = k.ev[e1] if u == k.eu[e1] else k.eu[e1]
        cdef i64 w = k.ev[e2] if u == k.eu[e2] else k.eu[e2]
        self.tick += 1
        self.leaves[0] = v
        self.slot[0] = e1
        cdef Py_ssize_t t = 0, limit = k.vdeg[u] + 2, it
        cdef i64 yt
        cdef int c, cu, stop, grow, tl
        cdef int nxt
        cdef Py_ssize_t base, wd, words
        cdef u64 bits
        cdef int rem
        for it in range(limit):
            yt = self.leaves[t]
            stop = 0
            grow = 0
            tl = k._trunc(yt)
            base = yt * k.fw
            words = (tl + 63) >> 6
            for wd in range(words):
                bits = k.fmiss[base + wd] & ~k.fcu[base + wd]
                rem = tl - (<int>wd << 6)
                if rem < 64:
                    bits &= ((<u64>1 << rem) - 1)
                while bits:
                    c = (<int>wd << 6) + _ffs64(bits) + 1
                    bits &= bits - 1
                    if yt != w and k._avail(w, c):
                        cu = self.pick_center_color(u, c)
                        if cu:
                            self.rotate(t)
                            self.fan_create(u, yt, w, cu, c, c, self.slot[t], e2)
                            return True
                    if stop == 0 and k._avail(u, c):
                        stop = c
                    if grow == 0 and self.stamp[c] != self.tick \
                            and k.pos[u * (k.mu + 1) + c] != 0:
                        grow = c
            if stop:
                self.rotate(t)
                self.claim(self.leaves[t], stop)
                k._set(self.slot[t], stop)
                self.queue[self.qtail] = e2
                self.qtail += 1
                return True
            if grow == 0:
                break
            self.stamp[grow] = self.tick
            nxt = k._edge_at(u, grow)
            t += 1
            self.leaves[t] = k.ev[nxt] if u == k.eu[nxt] else k.eu[nxt]
            self.slot[t] = nxt
        self.queue[self.qtail] = e1
        self.qtail += 1
        self.queue[self.qtail] = e2
        self.qtail += 1
        return True


def repair_pass(CyColorKernel kern, edges_in):
    """Native build_ufans loop: returns the surviving fan records (K x 8:
    u, v, w, cu, cv, cw, ev, ew).  The caller reconstructs the collection
    and computes the extended count from the uncolored delta."""
    edges = np.unique(np.ascontiguousarray(edges_in, dtype=np.int64))
    cdef i64[::1] ed = edges
    cdef Py_ssize_t lam = ed.shape[0]
    cdef _Repair R = _Repair(kern, lam)
    cdef CyColorKernel k = kern
    if lam == 0:
        return np.zeros((0, 8), dtype=np.int64)

    pend = np.zeros(k.n + 1, dtype=np.int64)
    cdef i64[::1] pd = pend
    cdef Py_ssize_t i
    cdef i64 e, a, b, anc
    for i in range(lam):
        e = ed[i]
        if k.colors[e]:
            raise ValueError(f"edge {e} in the uncolored set is colored")
        pd[k.eu[e]] += 1
        pd[k.ev[e]] += 1
    keys = np.empty(lam, dtype=np.int64)
    cdef i64[::1] ky = keys
    cdef i64 span = k.m + 1
    for i in range(lam):
        e = ed[i]
        a = k.eu[e]
        b = k.ev[e]
        if pd[a] > pd[b] or (pd[a] == pd[b] and a <= b):
            anc = a
        else:
            anc = b
        ky[i] = anc * span + e
    order = np.argsort(keys, kind="stable")
    cdef i64[::1] od = order.astype(np.int64)

    # pair consecutive bucket entries; leftovers go to the queue
    cdef Py_ssize_t j = 0
    cdef i64 e1, e2, anc1
    while j < lam:
        e1 = ed[od[j]]
        anc1 = ky[od[j]] // span
        if j + 1 < lam and ky[od[j + 1]] // span == anc1:
            e2 = ed[od[j + 1]]
            R.try_pair(anc1, e1, e2)
            j += 2
        else:
            R.queue[R.qtail] = e1
            R.qtail += 1
            j += 1

    while R.qhead < R.qtail:
        e = R.queue[R.qhead]
        R.qhead += 1
        if k.colors[e]:
            continue
        R.extend_one(e)

    out = np.zeros((R.nf, 8), dtype=np.int64)
    cdef i64[:, ::1] ov = out
    cdef Py_ssize_t cnt = 0
    for i in range(R.nf):
        if R.alive[i]:
            ov[cnt, 0] = R.fu[i]
            ov[cnt, 1] = R.fv[i]
            ov[cnt, 2] = R.fw[i]
            ov[cnt, 3] = R.rcu[i]
            ov[cnt, 4] = R.rcv[i]
            ov[cnt, 5] = R.rcw[i]
            ov[cnt, 6] = R.fev[i]
            ov[cnt, 7] = R.few[i]
            cnt += 1
    return out[:cnt]
