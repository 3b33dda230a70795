from __future__ import annotations

import csv
import math
from statistics import median

SCHEMA = ["algo", "n", "m", "delta", "rep", "seed",
          "wall_ms", "colors_used", "validated"]


class SchemaError(ValueError):
    """The CSV does not match the frozen bench schema."""


def load_rows(path: str) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != SCHEMA:
            raise SchemaError(
                f"expected columns {SCHEMA}, got {reader.fieldnames}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append({
                    "algo": raw["algo"],
                    "n": int(raw["n"]),
                    "m": int(raw["m"]),
                    "delta": int(raw["delta"]),
                    "rep": int(raw["rep"]),
                    "seed": int(raw["seed"]),
                    "wall_ms": float(raw["wall_ms"]),
                    "colors_used": int(raw["colors_used"]),
                    "validated": raw["validated"] == "True",
                })
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
    if not rows:
        raise SchemaError("no data rows")
    return rows


def median_series(rows: list[dict]) -> dict[str, list[tuple[int, float]]]:
    """algo -> [(m, median wall_ms)] sorted by m; medians resist timing noise."""
    groups: dict[tuple[str, int], list[float]] = {}
    for r in rows:
        groups.setdefault((r["algo"], r["m"]), []).append(r["wall_ms"])
    series: dict[str, list[tuple[int, float]]] = {}
    for (algo, m), walls in sorted(groups.items()):
        series.setdefault(algo, []).append((m, median(walls)))
    return series


def fit_slope(points: list[tuple[int, float]]) -> float:
    """Least-squares slope of log(wall) against log(m)."""
    if len(points) < 2:
        raise SchemaError("need at least two sizes to fit a slope")
    xs = [math.log(m) for m, _ in points]
    ys = [math.log(max(w, 1e-9)) for _, w in points]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def plot_scaling(csv_path: str, out_path: str) -> dict[str, float]:
    """Render the log-log figure; returns (and prints) slope per algorithm."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = load_rows(csv_path)
    series = median_series(rows)
    slopes: dict[str, float] = {}
    fig, ax = plt.subplots(figsize=(7, 5))
    for algo, points in sorted(series.items()):
        ms = [m for m, _ in points]
        ws = [w for _, w in points]
        slope = fit_slope(points)
        slopes[algo] = slope
        ax.loglog(ms, ws, marker="o", label=f"{algo} (slope {slope:.2f})")
    ax.set_xlabel("edges m")
    ax.set_ylabel("median wall time (ms)")
    ax.set_title("runtime scaling")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    for algo in sorted(slopes):
        print(f"{algo}: slope {slopes[algo]:.4f}")
    return slopes
