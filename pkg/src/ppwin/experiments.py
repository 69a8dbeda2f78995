"""Asymptotic convergence studies: observed window totals against predicted
main terms across (N, theta) grids, plus CSV/JSON emission.

Sweeps are deterministic: identical configuration produces bit-identical
tables up to the wall-time columns, which exist only for cost bookkeeping.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .model import (
    ProblemConfig,
    Theorem,
    Variant,
    admissible_h_range,
    main_term,
)
from .repcount import rep_window_total

CSV_COLUMNS = ("ell1", "ell2", "variant", "N", "theta", "H", "observed",
               "predicted", "ratio", "in_range", "wall_ms")
WALL_COLUMNS = ("wall_ms",)

# theorem whose H-window labels each variant's sweep rows
_VARIANT_THEOREM = {
    Variant.RPP_TRUNC: Theorem.T1,
    Variant.RPP_FULL: Theorem.T2,
    Variant.RP_TRUNC: Theorem.T3,
    Variant.RP_FULL: Theorem.T4,
}


@dataclass(frozen=True)
class SweepRow:
    ell1: int
    ell2: int
    variant: Variant
    N: int
    theta: float
    H: int
    observed: float
    predicted: float
    ratio: float
    in_range: bool
    wall_ms: int


@dataclass(frozen=True)
class SweepTable:
    meta: dict
    rows: tuple[SweepRow, ...] = field(default_factory=tuple)


def _in_theorem_range(variant: Variant, ell1: int, ell2: int, N: int, H: int,
                      epsilon: Fraction, kappa: float) -> bool:
    try:
        rng = admissible_h_range(_VARIANT_THEOREM[variant], ell1, ell2, N, epsilon)
    except ValueError:
        return False
    return rng.nonempty and rng.contains(H, kappa)


def sweep(variant: Variant, ell_pairs: Sequence[tuple[int, int]],
          n_list: Sequence[int], theta_list: Sequence[float],
          epsilon: Fraction | float = Fraction(1, 100), damped: bool = False,
          kappa: float = 1.0, threads: int = 1) -> SweepTable:
    """One row per (pair, N, theta) with H = floor(N^theta)."""
    eps = Fraction(epsilon).limit_denominator(10**9)
    combos = sorted((l1, l2, N, th)
                    for l1, l2 in ell_pairs for N in n_list for th in theta_list)
    rows = []
    for ell1, ell2, N, theta in combos:
        H = int(float(N) ** theta)
        cfg = ProblemConfig(ell1, ell2, variant, N, H, damped=damped)
        t0 = time.perf_counter()
        observed = rep_window_total(cfg, threads=threads)
        wall_ms = int((time.perf_counter() - t0) * 1000)
        predicted = main_term(cfg)
        rows.append(SweepRow(
            ell1, ell2, variant, N, theta, H, observed, predicted,
            observed / predicted if predicted > 0 else math.nan,
            _in_theorem_range(variant, ell1, ell2, N, H, eps, kappa), wall_ms))
    meta = {
        "version": __version__,
        "variant": variant.value,
        "damped": damped,
        "epsilon": str(eps),
        "kappa": kappa,
        "ell_pairs": sorted(list(p) for p in ell_pairs),
        "N_list": sorted(int(n) for n in n_list),
        "theta_list": sorted(float(t) for t in theta_list),
        "determinism": "seed-free; identical config gives identical rows "
                       "(wall_ms columns excepted)",
    }
    return SweepTable(meta, tuple(rows))


def fit_error_exponent(table: SweepTable) -> dict[str, float]:
    """Least-squares slope of log|observed - predicted| against log N.

    Diagnostic only: needs >= 3 rows sharing (ell1, ell2, theta) with
    varying N and positive predictions.
    """
    rows = table.rows
    if len(rows) < 3:
        raise ValueError("need at least 3 rows to fit")
    keys = {(r.ell1, r.ell2, r.theta) for r in rows}
    if len(keys) != 1:
        raise ValueError("rows must share a single (ell1, ell2, theta) group")
    if len({r.N for r in rows}) < 3:
        raise ValueError("need at least 3 distinct N values")
    if any(r.predicted <= 0 for r in rows):
        raise ValueError("all predicted values must be positive")
    if any(r.observed == r.predicted for r in rows):
        raise ValueError("degenerate fit: a row has zero error")
    xs = [math.log(r.N) for r in rows]
    ys = [math.log(abs(r.observed - r.predicted)) for r in rows]
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    intercept = ybar - slope * xbar
    resid = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    stderr = math.sqrt(resid / (n - 2) / sxx) if n > 2 else 0.0
    return {"slope": slope, "stderr": stderr}


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _row_record(row: SweepRow) -> dict:
    rec = asdict(row)
    rec["variant"] = row.variant.value
    rec["in_range"] = row.in_range
    return {k: rec[k] for k in CSV_COLUMNS}


def _atomic_write(destination: str | os.PathLike, text: str) -> None:
    destination = os.fspath(destination)
    directory = os.path.dirname(destination) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, destination)
    except OSError as exc:
        raise OSError(f"cannot write report to {destination!r}: {exc}") from exc


def render_csv(table: SweepTable) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in table.rows:
        rec = _row_record(row)
        lines.append(",".join(_fmt(rec[k]) for k in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(table: SweepTable) -> str:
    return json.dumps({"meta": table.meta,
                       "rows": [_row_record(r) for r in table.rows]},
                      indent=2, sort_keys=True) + "\n"


def emit_report(table: SweepTable, fmt: str, destination: str | os.PathLike) -> None:
    """Write the table as CSV or JSON (atomic: temp file + rename)."""
    if fmt == "csv":
        _atomic_write(destination, render_csv(table))
    elif fmt == "json":
        _atomic_write(destination, render_json(table))
    else:
        raise ValueError(f"unknown format {fmt!r} (want 'csv' or 'json')")
