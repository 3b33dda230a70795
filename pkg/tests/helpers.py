"""Shared instance builders for the test suite."""

from __future__ import annotations

import random

from vizing import (Graph, PartialColoring, SeparableCollection, UFan,
                    gen_random_graph, init_coloring)


def greedy_color(g: Graph, chi: PartialColoring) -> None:
    """First-fit color every edge of g into chi (palette permitting)."""
    for e in range(g.m):
        if chi.color_of(e):
            continue
        a, b = g.endpoints(e)
        for c in range(1, chi.mu + 1):
            if chi.is_missing(a, c) and chi.is_missing(b, c):
                chi.set_color(e, c)
                break
        else:
            raise AssertionError(f"greedy ran out of colors on edge {e}")


def random_partial(g: Graph, mu: int, uncolored_frac: float, seed: int):
    """Color totally then uncolor a random slice; returns (chi, uncolored).

    First-fit needs up to 2*Delta-1 colors, so tight palettes start from the
    classical colorer's output instead."""
    rnd = random.Random(seed)
    if mu >= 2 * g.max_degree - 1:
        chi = init_coloring(g, mu)
        greedy_color(g, chi)
    else:
        from vizing.classical import classical_color
        base = classical_color(g)
        chi = init_coloring(g, mu,
                            {e: base.color_of(e) for e in range(g.m)})
    ids = list(range(g.m))
    rnd.shuffle(ids)
    k = max(1, int(uncolored_frac * g.m))
    uncol = sorted(ids[:k])
    for e in uncol:
        chi.set_color(e, None)
    return chi, uncol


def random_missing(chi: PartialColoring, x: int, rnd: random.Random,
                   forbid=()) -> int | None:
    """A uniformly random color missing at x (rejection sampling)."""
    for _ in range(64):
        c = rnd.randint(1, chi.mu)
        if c not in forbid and chi.is_missing(x, c):
            return c
    cands = [c for c in range(1, chi.mu + 1)
             if c not in forbid and chi.is_missing(x, c)]
    return rnd.choice(cands) if cands else None


def plant_fans(g: Graph, chi: PartialColoring, coll: SeparableCollection,
               want: int, seed: int, nonsocial_pairs=None) -> int:
    """Uncolor edge pairs at shared centers and park them as random-type
    fans; returns how many fans were planted.

    With `nonsocial_pairs` = (eta, r) the two fan colors are forced into
    different block pairs of that partition, so the planted fans start
    non-social and the sparsify loop has real work to do.
    """
    rnd = random.Random(seed)
    planted = 0
    order = list(range(1, g.n + 1))
    rnd.shuffle(order)
    for u in order:
        if planted >= want:
            break
        eids = [int(e) for e in g.incident_edges(u)]
        eids = [e for e in eids if chi.color_of(e) and e not in coll.used_edges]
        rnd.shuffle(eids)
        while len(eids) >= 2 and planted < want:
            e1, e2 = eids.pop(), eids.pop()
            v, w = g.other(e1, u), g.other(e2, u)
            c1, c2 = chi.color_of(e1), chi.color_of(e2)
            chi.set_color(e1, None)
            chi.set_color(e2, None)
            fan = None
            for _ in range(16):
                beta = random_missing(chi, v, rnd, forbid=coll.cu_sets.get(v, ()))
                if beta is None or not chi.is_missing(w, beta) \
                        or beta in coll.cu_sets.get(w, ()):
                    continue
                forbid = set(coll.cu_sets.get(u, ())) | {beta}
                if nonsocial_pairs is not None:
                    eta, r = nonsocial_pairs
                    if beta > 2 * eta * r:
                        continue
                    pair = (beta - 1) // (2 * r)
                    forbid |= set(range(pair * 2 * r + 1, (pair + 1) * 2 * r + 1))
                    forbid |= set(range(2 * eta * r + 1, chi.mu + 1))
                cu = random_missing(chi, u, rnd, forbid=forbid)
                if cu is None:
                    continue
                cand = UFan(u, v, w, cu, beta, beta, e1, e2)
                if coll.insert(cand):
                    fan = cand
                    break
            if fan is None:
                chi.set_color(e1, c1)
                chi.set_color(e2, c2)
            else:
                planted += 1
    return planted


def adversarial_sparsify_state(rounds: int, seed: int, mu: int = 110,
                               eta: int = 10, extra_density: int = 4):
    """A state whose fans are all non-social *after* relabeling.

    Colors 1..q are used with uniform frequency (one use per round, so the
    frequency sort is the identity) and every fan type crosses two block
    pairs, leaving zero social fans; the sparsify loop then has to retype
    its way to the threshold.  Produces ~rounds*q/2 fans.
    """
    rnd = random.Random(seed)
    r = mu // (2 * eta)
    q = 2 * eta * r
    lam_want = rounds * (q // 2)
    n = max(64, 5 * lam_want)
    m = min(n * (n - 1) // 2, extra_density * n)
    g = gen_random_graph(n, m, seed)
    mu = max(mu, g.max_degree + 1)
    chi = init_coloring(g, mu)
    greedy_color(g, chi)
    coll = SeparableCollection(chi)

    def pair_of(c):
        return (c - 1) // (2 * r)

    sites = []
    for u in range(1, g.n + 1):
        eids = [int(e) for e in g.incident_edges(u)]
        rnd.shuffle(eids)
        while len(eids) >= 2:
            sites.append((u, eids.pop(), eids.pop()))
    rnd.shuffle(sites)
    si = 0
    for _ in range(rounds):
        colors = list(range(1, q + 1))
        rnd.shuffle(colors)
        matching = []
        while colors:
            c = colors.pop()
            k = next((i for i, c2 in enumerate(colors)
                      if pair_of(c2) != pair_of(c)), None)
            if k is None:
                break
            matching.append((c, colors.pop(k)))
        for beta, cu in matching:
            while si < len(sites):
                u, e1, e2 = sites[si]
                si += 1
                if chi.color_of(e1) == 0 or chi.color_of(e2) == 0:
                    continue
                v, w = g.other(e1, u), g.other(e2, u)
                if not (chi.is_missing(v, beta) and chi.is_missing(w, beta)
                        and chi.is_missing(u, cu)):
                    continue
                c1, c2 = chi.color_of(e1), chi.color_of(e2)
                chi.set_color(e1, None)
                chi.set_color(e2, None)
                if coll.insert(UFan(u, v, w, cu, beta, beta, e1, e2)):
                    break
                chi.set_color(e1, c1)
                chi.set_color(e2, c2)
    return g, chi, coll


def sparsify_state(num_fans: int, mu: int, seed: int,
                   n: int | None = None, extra_density: int = 3,
                   eta_for_nonsocial: int | None = None):
    """A graph + partial coloring + separable collection with ~num_fans
    random-type fans (the fuzz substrate for the sparsify pipeline)."""
    rnd = random.Random(seed)
    if n is None:
        n = max(24, 4 * num_fans + rnd.randint(0, num_fans + 8))
    m = min(n * (n - 1) // 2, extra_density * n)
    g = gen_random_graph(n, m, seed)
    mu = max(mu, g.max_degree + 1)
    chi = init_coloring(g, mu)
    greedy_color(g, chi)
    coll = SeparableCollection(chi)
    pairs = None
    if eta_for_nonsocial is not None:
        pairs = (eta_for_nonsocial, mu // (2 * eta_for_nonsocial))
    plant_fans(g, chi, coll, num_fans, seed + 1, nonsocial_pairs=pairs)
    return g, chi, coll


def half_bound_feasible(g: Graph) -> bool:
    """Whether Delta(G_i) <= ceil(Delta/2) is achievable by any partition.

    The only obstruction is a connected component whose degrees are all
    even, whose edge count is odd, and whose minimum degree equals the
    whole graph's (even) maximum degree: there deg_i(v) = deg(v)/2 is
    forced at every vertex, which needs an integral half of an odd edge
    count.  (C5 and K7 are the minimal examples.)
    """
    delta = g.max_degree
    if delta % 2 or g.m == 0:
        return True
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(g.u.tolist(), g.v.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    medges: dict[int, int] = {}
    degs = g.degrees()
    all_even: dict[int, bool] = {}
    mindeg: dict[int, int] = {}
    for a, b in zip(g.u.tolist(), g.v.tolist()):
        r = find(a)
        medges[r] = medges.get(r, 0) + 1
    for x in range(1, g.n + 1):
        d = int(degs[x])
        if d == 0:
            continue
        r = find(x)
        all_even[r] = all_even.get(r, True) and d % 2 == 0
        mindeg[r] = min(mindeg.get(r, d), d)
    for r, cnt in medges.items():
        if cnt % 2 and all_even.get(r, False) and mindeg.get(r) == delta:
            return False
    return True
