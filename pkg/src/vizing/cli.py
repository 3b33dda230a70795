"""Command-line surface: color graphs, check colorings, generate, bench.

Exit codes: 0 success, 1 check failure, 2 usage/input error, 3 internal
invariant violation.  `COLOR_TRACE=1` in the environment is equivalent to
passing --trace to `color`.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import kernel as _kernel
from .classical import classical_color
from .coloring import (ColoringError, dump_coloring, init_coloring,
                       load_coloring, quick_validate, validate_coloring)
from .driver import vizing_color
from .graph import (Graph, GraphError, gen_random_graph, gen_random_regular,
                    load_edge_list, write_edge_list)
from .sparsify import SparsifyError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh)


def _parse_algo(token: str):
    """'fast', 'classical', optionally with '@py' / '@cy' backend suffix."""
    name, _, backend = token.partition("@")
    if name not in ("fast", "classical"):
        raise ValueError(f"unknown algorithm {name!r}")
    if backend and backend not in ("py", "cy"):
        raise ValueError(f"unknown backend {backend!r}")
    return name, backend or None


def _run_algo(name: str, backend, g: Graph):
    prev = _kernel.active_backend()
    if backend:
        _kernel.set_backend(backend)
    try:
        if name == "fast":
            return vizing_color(g)
        return classical_color(g)
    finally:
        if backend:
            _kernel.set_backend(None if prev == _kernel.BACKEND else prev)


def cmd_color(args) -> int:
    g = _load_graph(args.input)
    trace = None
    if args.trace or os.environ.get("COLOR_TRACE") == "1":
        trace = lambda rec: print(rec.format(), file=sys.stderr)
    name, backend = _parse_algo(args.algo)
    t0 = time.perf_counter()
    if name == "fast":
        prev = _kernel.active_backend()
        if backend:
            _kernel.set_backend(backend)
        try:
            chi = vizing_color(g, trace=trace)
        finally:
            if backend:
                _kernel.set_backend(None if prev == _kernel.BACKEND else prev)
    else:
        chi = _run_algo(name, backend, g)
    wall_ms = (time.perf_counter() - t0) * 1e3
    ok, why = quick_validate(g, chi)
    if not ok and g.m:
        print(f"internal error: produced coloring invalid: {why}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            dump_coloring(chi, fh)
    else:
        dump_coloring(chi, sys.stdout)
    print(f"n={g.n} m={g.m} delta={g.max_degree} "
          f"colors={chi.max_color_used()} wall_ms={wall_ms:.1f}")
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.graph)
    with open(args.coloring, "r", encoding="utf-8") as fh:
        cmap = load_coloring(g, fh)
    limit = args.max_colors if args.max_colors else g.max_degree + 1
    problems = []
    if len(cmap) < g.m:
        missing = sorted(set(range(g.m)) - set(cmap))[:5]
        problems.append(f"not total: {g.m - len(cmap)} uncolored "
                        f"(e.g. edges {missing})")
    seen: dict[tuple[int, int], int] = {}
    for e in sorted(cmap):
        c = cmap[e]
        if c > limit:
            problems.append(f"edge {e}: color {c} exceeds limit {limit}")
            continue
        for x in g.endpoints(e):
            if (x, c) in seen:
                problems.append(
                    f"vertex {x}: edges {seen[(x, c)]} and {e} share color {c}")
            else:
                seen[(x, c)] = e
    if problems:
        for p in problems:
            print(p)
        return EXIT_CHECK_FAILED
    print(f"ok: total proper coloring with <= {limit} colors")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "random":
        g = gen_random_graph(args.n, args.m_or_d, args.seed)
    else:
        g = gen_random_regular(args.n, args.m_or_d, args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    print(f"wrote {g.m} edges to {args.out}")
    return EXIT_OK


def bench_rows(sizes, degree, reps, algos, seed_base=1_000_003,
               progress=None):
    """Generate, color, validate; yields frozen-schema CSV rows.

    Rows are produced ordered by (algo, m, rep).  Raises AssertionError if
    any run fails validation (callers abort with exit 3).
    """
    graphs = {}
    for idx, n in enumerate(sizes):
        seed = seed_base + idx
        graphs[n] = (gen_random_regular(n, degree, seed), seed)
    rows = []
    for token in algos:
        name, backend = _parse_algo(token)
        for n in sizes:
            g, seed = graphs[n]
            for rep in range(reps):
                if progress:
                    progress(f"{token} n={n} rep={rep}")
                t0 = time.perf_counter()
                chi = _run_algo(name, backend, g)
                wall_ms = (time.perf_counter() - t0) * 1e3
                ok, why = quick_validate(g, chi, max_colors=g.max_degree + 1)
                if not ok:
                    raise AssertionError(
                        f"bench run {token} n={n} rep={rep} invalid: {why}")
                rows.append({
                    "algo": token, "n": n, "m": g.m, "delta": g.max_degree,
                    "rep": rep, "seed": seed, "wall_ms": round(wall_ms, 3),
                    "colors_used": chi.max_color_used(), "validated": True,
                })
                del chi
    rows.sort(key=lambda r: (r["algo"], r["m"], r["rep"]))
    return rows


CSV_FIELDS = ["algo", "n", "m", "delta", "rep", "seed",
              "wall_ms", "colors_used", "validated"]


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for token in algos:
        _parse_algo(token)
    rows = bench_rows(sizes, args.degree, args.reps, algos,
                      progress=lambda msg: print(f"bench: {msg}",
                                                 file=sys.stderr, flush=True))
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for row in rows:
            w.writerow(row)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vizing",
                                 description="(Delta+1) edge coloring toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="color a graph file")
    p.add_argument("input")
    p.add_argument("--algo", default="fast",
                   help="fast|classical, optionally @py/@cy")
    p.add_argument("--out", default=None, help="coloring dump path")
    p.add_argument("--trace", action="store_true",
                   help="emit one line per sparsify iteration")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("check", help="validate a coloring dump")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--max-colors", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("kind", choices=["random", "regular"])
    p.add_argument("n", type=int)
    p.add_argument("m_or_d", type=int, help="edge count (random) or degree (regular)")
    p.add_argument("seed", type=int)
    p.add_argument("out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="scaling benchmark on regular graphs")
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--algos", default="fast,classical")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (GraphError, ColoringError, SparsifyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
