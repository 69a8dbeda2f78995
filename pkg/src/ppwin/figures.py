"""Figure rendering for sweep tables and lemma reports.

Used by the CLI report path: whenever a delimited report is written, a
companion figure lands next to it.  Rendering is file-only (Agg backend);
the numerical library never imports this module.
"""

from __future__ import annotations

import math
import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .experiments import SweepTable  # noqa: E402
from .verify import LemmaReport  # noqa: E402


def sweep_figure(table: SweepTable, destination: str | os.PathLike) -> None:
    """Observed/predicted ratio against N, one line per (ell1, ell2, theta)."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    groups: dict[tuple, list] = {}
    for row in table.rows:
        groups.setdefault((row.ell1, row.ell2, row.theta), []).append(row)
    for (l1, l2, theta), rows in sorted(groups.items()):
        rows.sort(key=lambda r: r.N)
        ns = [r.N for r in rows]
        ratios = [r.ratio for r in rows]
        marks = ["o" if r.in_range else "x" for r in rows]
        line, = ax.plot(ns, ratios, "-", lw=1.0,
                        label=rf"$\ell_1={l1},\ \ell_2={l2},\ \theta={theta:g}$")
        for n, ratio, mark in zip(ns, ratios, marks):
            ax.plot([n], [ratio], mark, color=line.get_color(), ms=5)
    ax.axhline(1.0, color="0.4", lw=0.8, ls="--")
    ax.set_xscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("observed / predicted")
    variant = table.meta.get("variant", "")
    ax.set_title(f"window totals vs main term ({variant})")
    if groups:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)


def reports_figure(reports: Sequence[LemmaReport],
                   destination: str | os.PathLike) -> None:
    """Horizontal bar chart of |observed - reference| / scale per report."""
    rows = [r for r in reports if not (math.isnan(r.observed) or math.isnan(r.reference))]
    fig, ax = plt.subplots(figsize=(8.0, max(2.5, 0.32 * len(rows) + 1.0)))
    names, resids, colors = [], [], []
    for r in rows:
        names.append(r.name)
        resid = abs(r.observed - r.reference) / max(1.0, abs(r.reference))
        resids.append(max(resid, 1e-18))
        colors.append({"pass": "tab:green", "fail": "tab:red"}.get(r.verdict, "tab:gray"))
    y = range(len(names))
    ax.barh(y, resids, color=colors)
    ax.set_yticks(list(y), names, fontsize=7)
    ax.set_xscale("log")
    ax.set_xlabel("|observed - reference| / max(1, |reference|)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)
