"""Figure rendering for the benchmark harness (written next to the CSVs)."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import ExperimentRow, ParetoPoint


def _omega_label(omega: Fraction) -> str:
    return str(omega.numerator) if omega.denominator == 1 else f"{omega.numerator}/{omega.denominator}"


def render_scatter(rows: list[ExperimentRow], path: str | Path) -> None:
    """Compiled-task disruption vs original-task disruption, one panel per
    (approach, omega) cell, diagonal for reference. Each panel only uses the
    problems solved by both that cell and the original task."""
    original = {(r.domain, r.problem): r.disruption
                for r in rows if r.approach == "original" and r.outcome == "solved"}
    cells: dict[tuple[str, Fraction], list[tuple[int, int]]] = {}
    for r in rows:
        if r.approach == "original" or r.outcome != "solved":
            continue
        base = original.get((r.domain, r.problem))
        if base is None:
            continue
        cells.setdefault((r.approach, r.omega), []).append((base, r.disruption))

    approaches = sorted({a for a, _ in cells})
    omegas = sorted({w for _, w in cells})
    if not approaches:
        approaches, omegas = ["eager"], [Fraction(1)]
    fig, axes = plt.subplots(len(approaches), len(omegas),
                             figsize=(3.2 * len(omegas), 3.0 * len(approaches)),
                             squeeze=False)
    for i, approach in enumerate(approaches):
        for j, omega in enumerate(omegas):
            ax = axes[i][j]
            pts = cells.get((approach, omega), [])
            hi = max([x for x, _ in pts] + [y for _, y in pts] + [1])
            ax.plot([0, hi], [0, hi], linestyle="--", linewidth=0.8,
                    color="gray", zorder=1)
            if pts:
                ax.scatter([x for x, _ in pts], [y for _, y in pts],
                           s=28, alpha=0.75, zorder=2)
            ax.set_xscale("symlog", linthresh=1)
            ax.set_yscale("symlog", linthresh=1)
            ax.set_xlim(-0.2, hi * 1.5)
            ax.set_ylim(-0.2, hi * 1.5)
            ax.set_title(f"{approach} w={_omega_label(omega)} (n={len(pts)})",
                         fontsize=9)
            if i == len(approaches) - 1:
                ax.set_xlabel("original-task disruption", fontsize=8)
            if j == 0:
                ax.set_ylabel("compiled-task disruption", fontsize=8)
            ax.tick_params(labelsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_pareto(points: list[ParetoPoint], path: str | Path) -> None:
    """Cost/disruption trade-off front per problem (exact, from the oracle)."""
    fronts: dict[tuple[str, str], list[ParetoPoint]] = {}
    for p in points:
        fronts.setdefault((p.domain, p.problem), []).append(p)
    keys = sorted(fronts)
    if not keys:
        keys = [("(empty)", "")]
    cols = min(4, len(keys))
    rows_n = (len(keys) + cols - 1) // cols
    fig, axes = plt.subplots(rows_n, cols, figsize=(3.0 * cols, 2.6 * rows_n),
                             squeeze=False)
    for k, key in enumerate(keys):
        ax = axes[k // cols][k % cols]
        pts = sorted(fronts.get(key, []), key=lambda p: p.cost)
        if pts:
            xs = [p.disruption for p in pts]
            ys = [float(p.cost) for p in pts]
            ax.plot(xs, ys, marker="o", linestyle="-")
        ax.set_title("/".join(key), fontsize=8)
        ax.set_xlabel("disruption", fontsize=7)
        ax.set_ylabel("cost", fontsize=7)
        ax.tick_params(labelsize=7)
    for k in range(len(keys), rows_n * cols):
        axes[k // cols][k % cols].axis("off")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
