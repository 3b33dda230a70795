import csv
import math
import os

import pytest

from benchplot import SCHEMA, SchemaError, fit_slope, load_rows, plot_scaling
from benchplot.cli import main


def write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SCHEMA)
        w.writeheader()
        for r in rows:
            w.writerow(r)


def synthetic(path, exponent, algos=("fast",), noise=None):
    rows = []
    for algo in algos:
        for i, n in enumerate([2**12, 2**14, 2**16, 2**18, 2**20]):
            m = 4 * n
            for rep in range(3):
                wall = m ** exponent / 1e3
                if noise:
                    wall *= 1 + noise[(i + rep) % len(noise)]
                rows.append({"algo": algo, "n": n, "m": m, "delta": 8,
                             "rep": rep, "seed": 7, "wall_ms": round(wall, 6),
                             "colors_used": 9, "validated": True})
    write_csv(path, rows)


def test_linear_slope_recovered(tmp_path, capsys):
    path = tmp_path / "lin.csv"
    synthetic(path, 1.0)
    slopes = plot_scaling(str(path), str(tmp_path / "lin.png"))
    assert abs(slopes["fast"] - 1.0) <= 0.01
    assert "fast: slope" in capsys.readouterr().out
    assert (tmp_path / "lin.png").stat().st_size > 0


def test_quadratic_slope_recovered(tmp_path):
    path = tmp_path / "quad.csv"
    synthetic(path, 2.0)
    slopes = plot_scaling(str(path), str(tmp_path / "quad.png"))
    assert abs(slopes["fast"] - 2.0) <= 0.01


def test_median_resists_outlier_reps(tmp_path):
    path = tmp_path / "noisy.csv"
    # one wild rep per size; medians must shrug it off
    synthetic(path, 1.0, noise=[0.0, 0.0, 25.0])
    slopes = plot_scaling(str(path), str(tmp_path / "noisy.png"))
    assert abs(slopes["fast"] - 1.0) <= 0.01


def test_two_series(tmp_path):
    path = tmp_path / "two.csv"
    synthetic(path, 1.0, algos=("fast", "classical"))
    slopes = plot_scaling(str(path), str(tmp_path / "two.png"))
    assert set(slopes) == {"fast", "classical"}


def test_schema_mismatch_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    assert main([str(bad), str(tmp_path / "x.png")]) == 2


def test_schema_error_raised(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("algo,n,m,delta,rep,seed,wall_ms,colors_used,validated\n"
                   "fast,not_an_int,8,8,0,1,1.0,9,True\n")
    with pytest.raises(SchemaError):
        load_rows(str(bad))


def test_fit_slope_needs_two_points():
    with pytest.raises(SchemaError):
        fit_slope([(10, 1.0)])
