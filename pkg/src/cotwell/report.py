"""Cross-method comparison tables, |psi|^2 overlays, and convergence studies.

All serializers are deterministic: identical inputs produce byte-identical
CSV/JSON.  Solver failures mark individual cells as missing instead of
aborting a table.
"""

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from . import analytic, numerov, spt, wkb
from .grid import Grid
from .numerov import EigenSolution
from .potential import PotentialModel

__all__ = [
    "ComparisonTable",
    "Panel",
    "ConvergenceRow",
    "DEFAULT_PANELS",
    "build_table",
    "convergence_study",
    "figure_panels",
    "analytic_solution",
    "solve_wavefunction",
    "panel_csv",
    "profile_csv",
    "spectrum_csv",
    "spectrum_json",
    "spt_levels_csv",
    "study_csv",
    "study_json",
    "table_csv",
    "table_json",
    "wavefunction_csv",
    "wkb_levels_csv",
]

UNITS = "hbar^2 k^2 / m"

DEFAULT_PANELS = (
    (0, ("analytic", "spt", "numerov")),
    (1, ("spt", "numerov")),
    (6, ("wkb", "numerov")),
    (7, ("wkb", "numerov")),
)


@dataclass(frozen=True)
class ComparisonTable:
    """Energies per level for the three methods; None marks a failed cell."""

    rows: tuple[dict, ...]
    units: str = UNITS
    config: dict = field(default_factory=dict)
    errors: tuple[str, ...] = ()


def build_table(n_max: int, model: PotentialModel | None = None,
                grid: Grid | None = None, wkb_tol: float = 1e-8,
                scan_step: float = 1e-3, bisect_tol: float = 1e-10) -> ComparisonTable:
    """Quantize levels 0..n_max-1 by WKB, perturbation theory, and shooting.

    The perturbative column is only meaningful at v0 = 1 (its frequency and
    couplings are fixed by that normalization), so other strengths are
    rejected up front.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    model = model or PotentialModel()
    grid = grid or Grid(8000)
    if model.v0 != 1.0:
        raise ValueError("comparison table requires v0 = 1 "
                         "(perturbative column is derived at that strength)")
    errors: list[str] = []

    numerov_col: list[float | None] = [None] * n_max
    try:
        spectrum = numerov.solve_spectrum(model, grid, n_levels=n_max,
                                          scan_step=scan_step, tol=bisect_tol)
        numerov_col = [s.energy for s in spectrum]
    except Exception as exc:  # cell-level failure, table survives
        errors.append(f"numerov: {exc}")

    rows = []
    for n in range(n_max):
        cell = {"n": n, "wkb": None, "spt": None, "numerov": numerov_col[n]}
        try:
            cell["wkb"] = wkb.quantize(model, n, tol=wkb_tol).energy
        except Exception as exc:
            errors.append(f"wkb level {n}: {exc}")
        try:
            cell["spt"] = spt.total_energy(n).total
        except Exception as exc:
            errors.append(f"spt level {n}: {exc}")
        rows.append(cell)
    config = {"v0": model.v0, "n_grid": grid.n, "scan_step": scan_step,
              "bisect_tol": bisect_tol, "wkb_tol": wkb_tol}
    return ComparisonTable(rows=tuple(rows), config=config, errors=tuple(errors))


@dataclass(frozen=True)
class Panel:
    """Aligned |psi|^2 columns for one level, one column per method."""

    level: int
    methods: tuple[str, ...]
    x: np.ndarray
    curves: dict[str, np.ndarray]


def analytic_solution(grid: Grid) -> EigenSolution:
    """The closed-form ground state sampled and normalized on the grid."""
    samples = np.array([analytic.ground_state(x) for x in grid.nodes])
    return numerov.solution_from_samples(0, analytic.GROUND_STATE_ENERGY,
                                         samples, grid, "analytic")


def solve_wavefunction(method: str, level: int, model: PotentialModel,
                       grid: Grid,
                       spectrum: list[EigenSolution] | None = None) -> EigenSolution:
    """One normalized bound state by the named method; a precomputed
    shooting spectrum can be passed to avoid re-solving."""
    if method == "numerov":
        if spectrum is None:
            spectrum = numerov.solve_spectrum(model, grid, n_levels=level + 1)
        return spectrum[level]
    if method == "wkb":
        return wkb.wkb_wavefunction(model, wkb.quantize(model, level), grid)
    if method == "spt":
        return spt.perturbed_state(level, grid)
    if method == "analytic":
        if level != 0:
            raise ValueError("analytic solution exists only for level 0")
        return analytic_solution(grid)
    raise ValueError(f"unknown method {method!r}")


def figure_panels(panels, model: PotentialModel | None = None,
                  grid: Grid | None = None) -> list[Panel]:
    """Build |psi|^2 overlay panels for (level, methods) pairs.

    A single shooting spectrum is solved up to the highest level that any
    panel requests from the numerov method.
    """
    model = model or PotentialModel()
    grid = grid or Grid(8000)
    panels = list(panels)
    numerov_levels = [lvl for lvl, methods in panels if "numerov" in methods]
    spectrum: list[EigenSolution] = []
    if numerov_levels:
        spectrum = numerov.solve_spectrum(model, grid,
                                          n_levels=max(numerov_levels) + 1)
    out = []
    for level, methods in panels:
        curves = {}
        for method in methods:
            sol = solve_wavefunction(method, level, model, grid, spectrum)
            curves[method] = sol.wavefunction ** 2
        out.append(Panel(level=level, methods=tuple(methods),
                         x=grid.nodes, curves=curves))
    return out


@dataclass(frozen=True)
class ConvergenceRow:
    n_grid: int
    h: float
    energy: float
    error: float
    observed_order: float | None


def convergence_study(level: int, grid_sizes, model: PotentialModel | None = None,
                      reference: float | None = None,
                      scan_step: float = 1e-3,
                      tol: float = 1e-13) -> list[ConvergenceRow]:
    """Eigenvalue error versus grid spacing, with per-pair observed order.

    The reference is the closed-form 1/2 for level 0 at v0 = 1; otherwise
    the energy from the finest grid in the study.
    """
    model = model or PotentialModel()
    sizes = sorted(set(int(n) for n in grid_sizes))
    if len(sizes) < 2:
        raise ValueError("need at least two grid sizes")
    energies = {}
    for n in sizes:
        spectrum = numerov.solve_spectrum(model, Grid(n), n_levels=level + 1,
                                          scan_step=scan_step, tol=tol)
        energies[n] = spectrum[level].energy
    if reference is None:
        if level == 0 and model.v0 == 1.0:
            reference = analytic.GROUND_STATE_ENERGY
        else:
            finest = sizes[-1]
            fine_spec = numerov.solve_spectrum(model, Grid(2 * finest),
                                               n_levels=level + 1,
                                               scan_step=scan_step, tol=tol)
            reference = fine_spec[level].energy
    rows = []
    prev_error = None
    for n in sizes:
        err = abs(energies[n] - reference)
        order = None
        if prev_error is not None and err > 0.0 and prev_error > 0.0:
            order = math.log2(prev_error / err)
        rows.append(ConvergenceRow(n_grid=n, h=2.0 * math.pi / n,
                                   energy=energies[n], error=err,
                                   observed_order=order))
        prev_error = err
    return rows


# ---------------------------------------------------------------------------
# serialization


def _fmt(value, digits: int = 12) -> str:
    if value is None:
        return ""
    return f"{value:.{digits}g}"


def table_csv(table: ComparisonTable, decimals: int | None = 4) -> str:
    """CSV of the comparison table; 4 decimals by default, full precision
    with decimals=None."""
    buf = io.StringIO()
    buf.write("n,wkb,spt,numerov\n")
    for row in table.rows:
        cells = []
        for key in ("wkb", "spt", "numerov"):
            v = row[key]
            if v is None:
                cells.append("")
            elif decimals is None:
                cells.append(f"{v:.17g}")
            else:
                cells.append(f"{v:.{decimals}f}")
        buf.write(f"{row['n']},{cells[0]},{cells[1]},{cells[2]}\n")
    return buf.getvalue()


def table_json(table: ComparisonTable) -> str:
    payload = {
        "units": table.units,
        "rows": [dict(row) for row in table.rows],
        "config": dict(table.config),
    }
    if table.errors:
        payload["errors"] = list(table.errors)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def spectrum_csv(solutions: list[EigenSolution]) -> str:
    buf = io.StringIO()
    buf.write("n,energy,nodes,parity\n")
    for s in solutions:
        buf.write(f"{s.level},{_fmt(s.energy)},{s.node_count},{s.parity}\n")
    return buf.getvalue()


def spectrum_json(solutions: list[EigenSolution], config: dict | None = None) -> str:
    payload = {
        "units": UNITS,
        "rows": [{"n": s.level, "energy": s.energy, "nodes": s.node_count,
                  "parity": s.parity, "method": s.method} for s in solutions],
        "config": dict(config or {}),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def wkb_levels_csv(levels: list[wkb.WkbLevel]) -> str:
    buf = io.StringIO()
    buf.write("n,energy,x1,x2,action\n")
    for lv in levels:
        x1, x2 = lv.turning_points
        buf.write(f"{lv.level},{_fmt(lv.energy)},{_fmt(x1)},{_fmt(x2)},"
                  f"{_fmt(lv.action)}\n")
    return buf.getvalue()


def spt_levels_csv(levels: list[spt.SptLevel]) -> str:
    buf = io.StringIO()
    buf.write("n,e0,e1,e2,total\n")
    for lv in levels:
        buf.write(f"{lv.level},{_fmt(lv.e0)},{_fmt(lv.e1)},{_fmt(lv.e2)},"
                  f"{_fmt(lv.total)}\n")
    return buf.getvalue()


def wavefunction_csv(solution: EigenSolution, grid: Grid) -> str:
    buf = io.StringIO()
    buf.write("x,psi,psi_sq\n")
    for x, psi in zip(grid.nodes, solution.wavefunction):
        buf.write(f"{_fmt(x)},{_fmt(psi)},{_fmt(psi * psi)}\n")
    return buf.getvalue()


def panel_csv(panel: Panel) -> str:
    buf = io.StringIO()
    buf.write("x," + ",".join(panel.methods) + "\n")
    columns = [panel.curves[m] for m in panel.methods]
    for i, x in enumerate(panel.x):
        buf.write(_fmt(x) + "," + ",".join(_fmt(c[i]) for c in columns) + "\n")
    return buf.getvalue()


def panel_json(panel: Panel) -> str:
    payload = {
        "level": panel.level,
        "x": [float(v) for v in panel.x],
        "psi_sq": {m: [float(v) for v in panel.curves[m]]
                   for m in panel.methods},
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def profile_csv(model: PotentialModel, grid: Grid) -> str:
    buf = io.StringIO()
    buf.write("x,v\n")
    for x, v in model.profile(grid):
        buf.write(f"{_fmt(x)},{_fmt(v)}\n")
    return buf.getvalue()


def study_csv(rows: list[ConvergenceRow]) -> str:
    buf = io.StringIO()
    buf.write("n_grid,h,energy,error,observed_order\n")
    for r in rows:
        order = "" if r.observed_order is None else _fmt(r.observed_order, 6)
        buf.write(f"{r.n_grid},{_fmt(r.h)},{_fmt(r.energy, 17)},"
                  f"{_fmt(r.error, 6)},{order}\n")
    return buf.getvalue()


def study_json(rows: list[ConvergenceRow]) -> str:
    payload = {
        "rows": [{"n_grid": r.n_grid, "h": r.h, "energy": r.energy,
                  "error": r.error, "observed_order": r.observed_order}
                 for r in rows],
        "units": UNITS,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def l2_distance(f: np.ndarray, g: np.ndarray, grid: Grid) -> float:
    """L2 distance of two sampled curves over [-pi, pi]."""
    diff = np.asarray(f) - np.asarray(g)
    return float(np.sqrt(simpson(diff * diff, dx=grid.h)))
