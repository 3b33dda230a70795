"""Kernel selection: compiled core when available, pure Python otherwise.

The kernel owns the per-vertex coloring structures of a partial mu-coloring
(color table, color->edge maps, truncated missing-color sets, the
collection's assigned-color marks) plus the hot walk/flip primitives.
Two interchangeable backends implement the same contract:

  * ``vizing._speedups``  - Cython, dense per-vertex tables (fast path)
  * ``vizing._pykernel``  - pure Python (always available)

Selection happens at import: the compiled module is used when importable,
unless ``VIZING_KERNEL`` forces ``py`` or ``cy``.  Both backends count the
same abstract structure operations in ``.ops`` (one per color-table lookup
or mutation and per missing-set word update), which is what the cost
contracts in the tests assert against; wall-clock is never asserted.

Kernel API (both backends):

  ColorKernel(n, mu, u, v, deg, colors=None)
  .color(e) .set_color(e, c) .uncolored_count() .max_color_used()
  .colors_snapshot() .is_missing(x, c) .edge_at(x, c)
  .miss_min(x) .miss_trunc(x) .trunc(x) .degree(x)
  .cu_mark(x, c) .cu_unmark(x, c) .cu_marked(x, c) .cbar_min(x) .cbar_trunc(x)
  .walk(x, a, b) .walk_collect(x, a, b) .flip_seq(edges, a, b) .walk_flip(x, a, b)
  .copy() .fingerprint() .consistency_errors() ._debug_set_pos(x, c, e)

plus module-level bulk helpers ``euler_split`` and (compiled only)
``classical_color_core`` / ``repair_pass`` twins that the pure backend
mirrors in plain Python.
"""

from __future__ import annotations

import os

from . import _pykernel

_BACKEND = os.environ.get("VIZING_KERNEL", "").strip().lower()

_speedups = None
if _BACKEND != "py":
    try:
        from . import _speedups  # type: ignore[attr-defined]
    except ImportError:
        _speedups = None
        if _BACKEND == "cy":
            raise ImportError(
                "VIZING_KERNEL=cy but vizing._speedups is not built; "
                "run `pip install -e . --no-build-isolation`"
            )

HAVE_SPEEDUPS = _speedups is not None
BACKEND = "cy" if HAVE_SPEEDUPS else "py"

_forced: str | None = None


def set_backend(name: str | None) -> None:
    """Force a backend process-wide (bench compares py against cy)."""
    global _forced
    if name not in (None, "py", "cy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "cy" and not HAVE_SPEEDUPS:
        raise ImportError("compiled kernel not available")
    _forced = name


def active_backend() -> str:
    return _forced or BACKEND


def ColorKernel(n, mu, u, v, deg, colors=None):
    """Construct the active backend's kernel for an n-vertex edge list."""
    if active_backend() == "cy":
        return _speedups.CyColorKernel(n, mu, u, v, deg, colors)
    return _pykernel.PyColorKernel(n, mu, u, v, deg, colors)


def make_kernel(backend, n, mu, u, v, deg, colors=None):
    """Construct a specific backend's kernel (bench/tests compare both)."""
    if backend == "py":
        return _pykernel.PyColorKernel(n, mu, u, v, deg, colors)
    if backend == "cy":
        if not HAVE_SPEEDUPS:
            raise ImportError("compiled kernel not available")
        return _speedups.CyColorKernel(n, mu, u, v, deg, colors)
    raise ValueError(f"unknown kernel backend {backend!r}")


def euler_split(n, u, v, deg):
    """Side array (0/1 per edge) of the alternating Euler split."""
    if active_backend() == "cy":
        return _speedups.euler_split(n, u, v, deg)
    return _pykernel.euler_split(n, u, v, deg)
