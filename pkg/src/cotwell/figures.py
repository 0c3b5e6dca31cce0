"""Matplotlib renderings of the report payloads, written next to the CSVs."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import Grid
from .numerov import EigenSolution
from .potential import PotentialModel
from .report import ComparisonTable, ConvergenceRow, Panel

__all__ = [
    "save_convergence_figure",
    "save_panels_figure",
    "save_potential_figure",
    "save_spectrum_figure",
    "save_table_figure",
]

_METHOD_STYLE = {
    "analytic": dict(color="k", ls="-", lw=1.8),
    "numerov": dict(color="C0", ls="-", lw=1.2),
    "wkb": dict(color="C3", ls="--", lw=1.2),
    "spt": dict(color="C2", ls="-.", lw=1.2),
}


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_potential_figure(model: PotentialModel, grid: Grid, path: str) -> str:
    """Well profile with its quadratic truncation overlaid."""
    xs = grid.nodes[1:-1]
    v = [model.value(x) for x in xs]
    vq = [model.quadratic_value(x) for x in xs]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(xs, v, "k-", lw=1.5, label="v(x)")
    ax.plot(xs, vq, "C3--", lw=1.2, label="quadratic truncation")
    ax.set_ylim(0.0, max(2.5, 4.0 * model.v0))
    ax.set_xlabel("x")
    ax.set_ylabel("v(x)")
    ax.legend(frameon=False)
    return _finish(fig, path)


def save_spectrum_figure(solutions: list[EigenSolution], path: str) -> str:
    """Energy-level diagram for one method's spectrum."""
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    for s in solutions:
        ax.hlines(s.energy, s.level - 0.35, s.level + 0.35, color="C0")
    ax.set_xlabel("level n")
    ax.set_ylabel("energy")
    ax.set_xticks([s.level for s in solutions])
    return _finish(fig, path)


def save_table_figure(table: ComparisonTable, path: str) -> str:
    """Marker chart of the three energy columns versus level."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ns = [row["n"] for row in table.rows]
    for key, marker in (("wkb", "s"), ("spt", "^"), ("numerov", "o")):
        vals = [row[key] for row in table.rows]
        pts = [(n, v) for n, v in zip(ns, vals) if v is not None]
        if pts:
            ax.plot(*zip(*pts), marker=marker, ls=":", label=key)
    ax.set_xlabel("level n")
    ax.set_ylabel(f"energy [{table.units}]")
    ax.legend(frameon=False)
    return _finish(fig, path)


def save_panels_figure(panels: list[Panel], path: str) -> str:
    """Grid of |psi|^2 overlays, one subplot per panel."""
    count = len(panels)
    ncols = 2 if count > 1 else 1
    nrows = (count + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.6 * ncols, 3.2 * nrows),
                             squeeze=False)
    flat = axes.ravel()
    for ax in flat[count:]:
        ax.set_axis_off()
    for ax, panel in zip(flat, panels):
        for method in panel.methods:
            style = _METHOD_STYLE.get(method, {})
            ax.plot(panel.x, panel.curves[method], label=method, **style)
        ax.set_title(f"level {panel.level}")
        ax.set_xlabel("x")
        ax.set_ylabel(r"$|\psi|^2$")
        ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path)


def save_convergence_figure(rows: list[ConvergenceRow], path: str) -> str:
    """log-log error versus step size with a fourth-order guide line."""
    hs = np.array([r.h for r in rows])
    errs = np.array([max(r.error, 1e-17) for r in rows])
    fig, ax = plt.subplots(figsize=(4.6, 3.6))
    ax.loglog(hs, errs, "o-", label="measured")
    anchor = errs[np.argmax(hs)]
    ax.loglog(hs, anchor * (hs / hs.max()) ** 4, "k:", label=r"$h^4$ guide")
    ax.set_xlabel("step h")
    ax.set_ylabel("energy error")
    ax.legend(frameon=False)
    return _finish(fig, path)
