"""Type sparsification: concentrate u-fan types into eta diagonal blocks.

The palette [mu] is cut into 2*eta blocks C_1..C_{2eta} of r = floor(mu/2eta)
colors, paired into script-C_k = C_{2k-1} u C_{2k}.  A fan is uniform when
its type sits inside one block, aligned when it spans a pair, social when
either.  The main loop repeatedly picks the pair k* with the fewest social
fans, finds the fans whose retype toward k* would disturb a social fan
(k*-bad), and retypes a largest orientation-consistent batch of good fans
simultaneously by flipping their pairwise edge-disjoint relevant paths.

Batches are orientation-consistent (all centers in one block, all leaves in
another): for a fixed orientation any two relevant path types are equal or
share no color, which is what makes the simultaneous flip sound.  After a
batch, every fan whose assigned colors were collaterally reassigned is
removed (damaged or not), keeping the social-count accounting exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from .coloring import AlternatingPath, ColoringError, PartialColoring
from .graph import Graph
from .separable import SeparableCollection, UFan

__all__ = ["ColorPartition", "build_partition", "FanClass", "classify_fan",
           "RelabelPlan", "relabel_colors", "compute_paths", "find_k_bad",
           "modify_types", "sparsify_types", "SparsifyError", "TraceRecord"]


class SparsifyError(ValueError):
    """Hypothesis violation (eta out of range, bad batch, ...)."""


class InternalInvariantError(AssertionError):
    """A bound the analysis guarantees failed; indicates a bug."""


# -- the color partition -------------------------------------------------------


@dataclass(frozen=True)
class ColorPartition:
    """Blocks C_i = [(i-1)r+1, ir] for i in 1..2eta; pairs join 2k-1, 2k."""

    mu: int
    eta: int
    r: int
    q: int

    def block_of(self, c: int) -> int:
        """Block index of color c, or 0 when c > q (outside all blocks)."""
        if c > self.q or c < 1:
            return 0
        return (c - 1) // self.r + 1

    def index_of(self, c: int) -> tuple[int, int]:
        """(block, position) with color(block, position) == c."""
        i = self.block_of(c)
        if i == 0:
            raise SparsifyError(f"color {c} outside the partitioned range")
        return i, c - (i - 1) * self.r

    def color(self, i: int, j: int) -> int:
        """C_i(j), the j-th color of block i."""
        if not (1 <= i <= 2 * self.eta and 1 <= j <= self.r):
            raise SparsifyError(f"no color C_{i}({j})")
        return (i - 1) * self.r + j

    def pair_of_block(self, i: int) -> int:
        return (i + 1) // 2

    def pair_blocks(self, k: int) -> tuple[int, int]:
        return 2 * k - 1, 2 * k

    def pair_colors(self, k: int) -> range:
        """All colors of script-C_k (one contiguous range of 2r colors)."""
        lo = (2 * k - 2) * self.r + 1
        return range(lo, lo + 2 * self.r)


def build_partition(mu: int, eta: int) -> ColorPartition:
    if not (10 <= eta and 10 * eta <= mu):
        raise SparsifyError(f"eta={eta} outside [10, mu/10] for mu={mu}")
    r = mu // (2 * eta)
    return ColorPartition(mu=mu, eta=eta, r=r, q=2 * eta * r)


# -- fan classification ------------------------------------------------------------


class FanClass(NamedTuple):
    kind: str         # "uniform" | "aligned" | "nonsocial" | "outofrange"
    a: int = 0        # uniform: block; aligned: pair k; nonsocial: min block
    b: int = 0        # nonsocial: max block

    @property
    def social(self) -> bool:
        return self.kind in ("uniform", "aligned")


def classify_fan(f: UFan, part: ColorPartition) -> FanClass:
    bu = part.block_of(f.cu)
    bv = part.block_of(f.cv)
    if bu == 0 or bv == 0:
        return FanClass("outofrange")
    if bu == bv:
        return FanClass("uniform", bu)
    if part.pair_of_block(bu) == part.pair_of_block(bv):
        return FanClass("aligned", part.pair_of_block(bu))
    return FanClass("nonsocial", min(bu, bv), max(bu, bv))


# -- color relabeling (most-used colors first) ---------------------------------------


@dataclass
class RelabelPlan:
    perm: list[int]            # perm[old] = new label, 1-based, perm[0] unused
    frequency: list[int]       # frequency[c] = #fans whose type contains c

    @property
    def identity(self) -> bool:
        return all(self.perm[c] == c for c in range(1, len(self.perm)))


def relabel_colors(chi: PartialColoring, coll: SeparableCollection) -> RelabelPlan:
    """Permute colors so type-frequency is non-increasing; rewrite chi and fans.

    After this at least ceil(3*lambda/5) fans have types inside [q] x [q]
    for any valid partition of the relabeled palette.
    """
    mu = chi.mu
    freq = [0] * (mu + 1)
    for f in coll:
        for c in set((f.cu, f.cv, f.cw)):
            freq[c] += 1
    order = sorted(range(1, mu + 1), key=lambda c: (-freq[c], c))
    perm = [0] * (mu + 1)
    for new, old in enumerate(order, start=1):
        perm[old] = new
    plan = RelabelPlan(perm=perm, frequency=freq)
    if plan.identity:
        return plan

    import numpy as np
    colors = np.asarray(chi.colors_snapshot())
    new_colors = np.asarray(perm, dtype=np.int32)[colors]
    _replace_colors(chi, new_colors)
    _remap_collection(chi, coll, perm)
    return plan


def _replace_colors(chi: PartialColoring, new_colors) -> None:
    from . import kernel as _kernel
    g = chi.graph
    chi.kern = _kernel.ColorKernel(g.n, chi.mu, g.u, g.v, g.degrees(), new_colors)


def _remap_collection(chi, coll: SeparableCollection, perm) -> None:
    fans = list(coll.fans.values())
    coll.fans.clear()
    coll.psi.clear()
    coll.cu_sets.clear()
    coll.used_edges.clear()
    for f in fans:
        f.cu, f.cv, f.cw = perm[f.cu], perm[f.cv], perm[f.cw]
        if not coll.insert(f):
            raise InternalInvariantError("relabel broke separability")


# -- k-relevant path computation (center-oriented, per fan) ----------------------------


def _targets(part: ColorPartition, k: int, center_block: int, leaf_block: int):
    """Alg-2 target blocks (ell for the center, ell' for the leaves)."""
    ell, ellp = 2 * k - 1, 2 * k
    if center_block == 2 * k or leaf_block == 2 * k - 1:
        ell, ellp = 2 * k, 2 * k - 1
    return ell, ellp


def compute_paths(chi: PartialColoring, f: UFan, k: int,
                  part: ColorPartition) -> list[AlternatingPath]:
    """The k-relevant alternating paths of a non-social fan.

    Degenerate sides (the fan color already in its target block) contribute
    no path; P_v and P_w are deduplicated when they are the same path.
    """
    cls = classify_fan(f, part)
    if cls.kind != "nonsocial":
        raise SparsifyError(f"fan {f.key()} is not eligible: {cls.kind}")
    bi, j = part.index_of(f.cu)
    bip, jp = part.index_of(f.cv)
    ell, ellp = _targets(part, k, bi, bip)
    paths = []
    if ell != bi:
        paths.append(chi.walk_alternating_path(f.u, part.color(ell, j), f.cu))
    if ellp != bip:
        target = part.color(ellp, jp)
        pv = chi.walk_alternating_path(f.v, target, f.cv)
        paths.append(pv)
        if f.w not in (pv.x, pv.y):
            paths.append(chi.walk_alternating_path(f.w, target, f.cv))
    return paths


def _path_key(p: AlternatingPath):
    return (p.alpha, p.beta, min(p.x, p.y), max(p.x, p.y))


# -- k-bad fans -------------------------------------------------------------------------


def find_k_bad(chi: PartialColoring, coll: SeparableCollection, k: int,
               part: ColorPartition) -> set[int]:
    """Ids (UFan identity) of the k-bad fans: social ones, plus non-social
    fans whose single-fan retype would change the type of a social fan.

    Walks, for each social fan vertex x with color C_l(j), the candidate
    relevant paths through x (2 of them when l is outside the pair, 2eta-2
    when inside) and looks up the responsible non-social fan at *both*
    endpoints of each walked path (the responsible fan shares the near
    endpoint exactly when the path is empty).
    """
    bad: set[int] = set()
    social: list[UFan] = []
    for f in coll:
        if classify_fan(f, part).social:
            social.append(f)
            bad.add(id(f))
    pair = (2 * k - 1, 2 * k)
    others = [i for i in range(1, 2 * part.eta + 1) if i not in pair]
    for fs in social:
        for x in fs.vertices():
            cl = fs.color_at(x)
            l, j = part.index_of(cl)
            if l in pair:
                probes = [(part.color(i, j), l) for i in others]   # (src, target)
            else:
                probes = [(cl, t) for t in pair]                   # src is cl itself
            for src, target in probes:
                if l in pair:
                    other_color = src
                else:
                    other_color = part.color(target, j)
                y, _n = chi.kern.walk(x, cl, other_color)
                for z in {x, y}:
                    g = coll.find_ufan(z, src)
                    if g is None or g is fs:
                        continue
                    gcls = classify_fan(g, part)
                    if gcls.kind != "nonsocial":
                        continue
                    bu = part.block_of(g.cu)
                    bv = part.block_of(g.cv)
                    ell, ellp = _targets(part, k, bu, bv)
                    role_target = ell if z == g.u else ellp
                    if role_target == target:
                        bad.add(id(g))
    return bad


# -- batched type modification ----------------------------------------------------------


def modify_types(chi: PartialColoring, coll: SeparableCollection,
                 batch: list[UFan], k: int, part: ColorPartition,
                 check_disjoint: bool = False) -> list[UFan]:
    """Flip all k-relevant paths of an orientation-consistent batch.

    Afterwards every batch fan is aligned with pair k.  Returns the fans
    outside the batch whose assigned colors were collaterally reassigned
    (at most 3 per batch member); the caller removes them.
    """
    if not batch:
        return []
    ob = {(part.block_of(f.cu), part.block_of(f.cv)) for f in batch}
    if len(ob) != 1:
        raise SparsifyError("batch is not orientation-consistent")
    (bi, bip), = ob
    if bi == bip or bi == 0 or bip == 0 or part.pair_of_block(bi) == part.pair_of_block(bip):
        raise SparsifyError("batch fans must be non-social and in range")
    for f in batch:
        if f not in coll:
            raise SparsifyError("batch fan not in the collection")

    paths: dict[tuple, AlternatingPath] = {}
    for f in batch:
        for p in compute_paths(chi, f, k, part):
            paths.setdefault(_path_key(p), p)

    plist = [paths[key] for key in sorted(paths)]
    if check_disjoint:
        _assert_disjoint(plist)

    batch_ids = {id(f) for f in batch}
    touched: list = []
    for p in plist:
        chi.flip_path(p, collection=coll, touched=touched)

    for f in batch:
        cls = classify_fan(f, part)
        if not (cls.kind == "aligned" and cls.a == k):
            raise InternalInvariantError(
                f"batch fan {f.key()} ended {cls} instead of aligned({k})")
    collateral: list[UFan] = []
    seen: set[int] = set()
    for f, _z, _old, _new in touched:
        if id(f) not in batch_ids and id(f) not in seen:
            seen.add(id(f))
            collateral.append(f)
    if len(collateral) > 3 * len(batch):
        raise InternalInvariantError("more than 3|V| collateral fans")
    return collateral


def _assert_disjoint(paths: list[AlternatingPath]) -> None:
    sets = [frozenset(p.edges) for p in paths]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            inter = sets[i] & sets[j]
            if inter and sets[i] != sets[j]:
                raise InternalInvariantError("relevant paths overlap partially")


# -- the sparsify loop ---------------------------------------------------------------------


@dataclass
class TraceRecord:
    k: int
    pair: tuple[int, int]
    batch_size: int
    social_before: int
    social_after: int
    size_before: int
    size_after: int
    bad_count: int
    social_k_before: int

    def format(self) -> str:
        return (f"sparsify iter: k*={self.k} pair=({self.pair[0]},{self.pair[1]}) "
                f"|V|={self.batch_size} |Uhat|={self.social_after} |U|={self.size_after}")


def sparsify_types(g: Graph, chi: PartialColoring, coll: SeparableCollection,
                   eta: int, trace: Optional[Callable] = None,
                   check_disjoint: bool = False) -> ColorPartition:
    """Shrink the fan-type space to the eta diagonal pairs.

    Modifies chi (never changing which edges are colored) and the
    collection in place; afterwards every surviving fan is social and the
    collection kept at least ceil(lambda/100) fans.  Returns the partition.
    """
    mu = chi.mu
    if not (10 <= eta and 10 * eta <= mu):
        raise SparsifyError(f"eta={eta} outside [10, mu/10] for mu={mu}")
    lam = len(coll)
    part = build_partition(mu, eta)
    if lam == 0:
        return part
    relabel_colors(chi, coll)

    for f in [f for f in coll if classify_fan(f, part).kind == "outofrange"]:
        coll.delete(f)

    threshold = -(-lam // 100)
    max_iters = 400 * eta * eta + 8
    iters = 0
    while True:
        by_class: dict[tuple[int, int], list[UFan]] = {}
        social_count = 0
        social_k = [0] * (eta + 1)
        for f in coll:
            cls = classify_fan(f, part)
            if cls.social:
                social_count += 1
                kk = cls.a if cls.kind == "aligned" else part.pair_of_block(cls.a)
                social_k[kk] += 1
            else:
                by_class.setdefault(
                    (part.block_of(f.cu), part.block_of(f.cv)), []).append(f)
        if social_count >= threshold:
            break
        iters += 1
        if iters > max_iters:
            raise InternalInvariantError("sparsify iteration cap exceeded")

        kstar = min(range(1, eta + 1), key=lambda kk: (social_k[kk], kk))
        bad = find_k_bad(chi, coll, kstar, part)
        best_key = None
        best: list[UFan] = []
        for (bi, bip), fans in sorted(
                by_class.items(), key=lambda kv: (min(kv[0]), max(kv[0]), kv[0][0])):
            good = [f for f in fans if id(f) not in bad]
            if len(good) > len(best):
                best, best_key = good, (bi, bip)
        if not best:
            raise InternalInvariantError("no good batch available")
        best.sort(key=lambda f: f.key())

        size_before = len(coll)
        collateral = modify_types(chi, coll, best, kstar, part,
                                  check_disjoint=check_disjoint)
        for f in collateral:
            coll.delete(f)
        if trace is not None:
            social_after = sum(1 for f in coll if classify_fan(f, part).social)
            trace(TraceRecord(
                k=kstar, pair=(min(best_key), max(best_key)),
                batch_size=len(best), social_before=social_count,
                social_after=social_after, size_before=size_before,
                size_after=len(coll), bad_count=len(bad),
                social_k_before=social_k[kstar]))

    for f in [f for f in coll if not classify_fan(f, part).social]:
        coll.delete(f)
    if len(coll) < threshold:
        raise InternalInvariantError("sparsify kept fewer than lambda/100 fans")
    return part
