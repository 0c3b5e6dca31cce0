"""Command-line frontend: solve spectra, compare methods, export wavefunctions.

Subcommands print their payload (CSV or JSON) to stdout or ``--out``;
diagnostics go to stderr.  ``--plot`` renders the matching matplotlib
figure next to the delimited output.  Exit codes: 0 success, 1 solver
failure, 2 usage error.
"""

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import analytic, figures, numerov, report, spt, wkb
from .grid import Grid
from .potential import PotentialModel

OUT_DIR_ENV = "COTWELL_OUT_DIR"

_DEFAULTS = {
    "v0": 1.0,
    "n_grid": 8000,
    "scan_step": 1e-3,
    "bisect_tol": 1e-10,
    "wkb_tol": 1e-8,
    "format": "csv",
    "out": None,
    "plot": None,
}

METHODS = ("numerov", "wkb", "wkb-closed", "spt", "analytic", "all")


@dataclass
class RunConfig:
    """Solver and output settings shared by every subcommand."""

    v0: float
    n_grid: int
    scan_step: float
    bisect_tol: float
    wkb_tol: float
    format: str
    out: str | None
    plot: str | None

    def validate(self) -> None:
        if self.n_grid % 2 or self.n_grid < 100:
            raise click.UsageError("--n-grid must be even and >= 100")
        for name in ("scan_step", "bisect_tol", "wkb_tol"):
            if getattr(self, name) <= 0:
                raise click.UsageError(f"--{name.replace('_', '-')} must be > 0")
        if self.v0 <= 0:
            raise click.UsageError("--v0 must be > 0")

    def model(self) -> PotentialModel:
        return PotentialModel(v0=self.v0)

    def grid(self) -> Grid:
        return Grid(self.n_grid)


def _read_config_file(path: str) -> dict:
    values = {}
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{line_no}: expected key=value")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge(option_values: dict, config_path: str | None) -> RunConfig:
    """Flags win over config-file entries, which win over defaults."""
    file_values = _read_config_file(config_path) if config_path else {}
    merged = {}
    casts = {"v0": float, "n_grid": int, "scan_step": float,
             "bisect_tol": float, "wkb_tol": float, "format": str,
             "out": str, "plot": str}
    for key, default in _DEFAULTS.items():
        if option_values.get(key) is not None:
            merged[key] = option_values[key]
        elif key in file_values:
            merged[key] = casts[key](file_values[key])
        else:
            merged[key] = default
    if merged["format"] not in ("csv", "json"):
        raise click.UsageError("--format must be csv or json")
    cfg = RunConfig(**merged)
    cfg.validate()
    return cfg


def _common_options(fn):
    for opt in reversed([
        click.option("--v0", type=float, default=None,
                     help="well strength (default 1)"),
        click.option("--n-grid", type=int, default=None,
                     help="shooting grid segments (default 8000, even)"),
        click.option("--scan-step", type=float, default=None,
                     help="energy scan step (default 1e-3)"),
        click.option("--bisect-tol", type=float, default=None,
                     help="eigenvalue bisection tolerance (default 1e-10)"),
        click.option("--wkb-tol", type=float, default=None,
                     help="WKB quantization tolerance (default 1e-8)"),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default=None, help="payload format (default csv)"),
        click.option("--out", type=str, default=None,
                     help="write payload to this path instead of stdout"),
        click.option("--plot", type=str, default=None,
                     help="render the matching figure to this path"),
        click.option("--config", "config_path",
                     type=click.Path(exists=True, dir_okay=False),
                     default=None, help="key=value config file (flags win)"),
    ]):
        fn = opt(fn)
    return fn


def _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out, plot,
                  config_path) -> RunConfig:
    return _merge({"v0": v0, "n_grid": n_grid, "scan_step": scan_step,
                   "bisect_tol": bisect_tol, "wkb_tol": wkb_tol,
                   "format": fmt, "out": out, "plot": plot}, config_path)


def _parse_levels(text: str) -> list[int]:
    """'a..b' is the half-open range [a, b); 'a..a' and plain 'a' mean the
    single level a."""
    text = text.strip()
    try:
        if ".." in text:
            a_txt, b_txt = text.split("..", 1)
            a, b = int(a_txt), int(b_txt)
            if a < 0 or b < a:
                raise ValueError
            return [a] if a == b else list(range(a, b))
        single = int(text)
        if single < 0:
            raise ValueError
        return [single]
    except ValueError:
        raise click.UsageError(
            f"invalid --levels {text!r}: expected 'a..b' or a single index")


def _resolve_path(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(payload: str, cfg: RunConfig) -> None:
    out = _resolve_path(cfg.out)
    if out is None:
        click.echo(payload, nl=False)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(payload)
        click.echo(f"wrote {out}", err=True)


def _emit_table(table, cfg: RunConfig) -> None:
    """Comparison tables mirror the four-decimal reference layout; file
    output gets a full-precision twin alongside."""
    if cfg.format == "json":
        _emit(report.table_json(table), cfg)
        return
    _emit(report.table_csv(table), cfg)
    out = _resolve_path(cfg.out)
    if out is not None:
        twin = out.with_suffix(".full" + (out.suffix or ".csv"))
        twin.write_text(report.table_csv(table, decimals=None))
        click.echo(f"wrote {twin}", err=True)


def _plot(cfg: RunConfig, render) -> None:
    path = _resolve_path(cfg.plot)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    render(str(path))
    click.echo(f"wrote {path}", err=True)


def _rows_payload(rows: list[dict], keys: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"units": report.UNITS, "rows": rows},
                          indent=2, sort_keys=True) + "\n"
    lines = [",".join(keys)]
    for row in rows:
        lines.append(",".join(
            f"{row[k]:.12g}" if isinstance(row[k], float) else str(row[k])
            for k in keys))
    return "\n".join(lines) + "\n"


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
@click.version_option(package_name="cotwell")
def main():
    """Bound states of the symmetric cotangent well, four ways."""


@main.command()
@click.option("--method", type=click.Choice(METHODS), default="numerov",
              show_default=True, help="which solver to run")
@click.option("--levels", "levels_spec", default="0..8", show_default=True,
              help="level range 'a..b' (half-open) or a single index")
@_common_options
def solve(method, levels_spec, v0, n_grid, scan_step, bisect_tol, wkb_tol,
          fmt, out, plot, config_path):
    """Solve the spectrum with one method and print the levels."""
    cfg = _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
                        plot, config_path)
    levels = _parse_levels(levels_spec)
    model = cfg.model()
    try:
        if method == "numerov":
            spectrum = numerov.solve_spectrum(
                model, cfg.grid(), n_levels=max(levels) + 1,
                scan_step=cfg.scan_step, tol=cfg.bisect_tol)
            picked = [spectrum[n] for n in levels]
            payload = (report.spectrum_json(picked, cfg_dict(cfg))
                       if cfg.format == "json" else report.spectrum_csv(picked))
            _emit(payload, cfg)
            _plot(cfg, lambda p: figures.save_spectrum_figure(picked, p))
        elif method == "wkb":
            quantized = [wkb.quantize(model, n, tol=cfg.wkb_tol) for n in levels]
            if cfg.format == "json":
                rows = [{"n": q.level, "energy": q.energy,
                         "x1": q.turning_points[0], "x2": q.turning_points[1],
                         "action": q.action} for q in quantized]
                payload = _rows_payload(rows, ["n", "energy", "x1", "x2",
                                               "action"], "json")
            else:
                payload = report.wkb_levels_csv(quantized)
            _emit(payload, cfg)
            _plot(cfg, lambda p: figures.save_spectrum_figure(
                [numerov.EigenSolution(q.level, q.energy, None, q.level,
                                       "even" if q.level % 2 == 0 else "odd",
                                       "wkb") for q in quantized], p))
        elif method == "wkb-closed":
            rows = [{"n": n, "energy": wkb.closed_form_energy(n)}
                    for n in levels]
            _emit(_rows_payload(rows, ["n", "energy"], cfg.format), cfg)
        elif method == "spt":
            lvls = [spt.total_energy(n) for n in levels]
            if cfg.format == "json":
                rows = [{"n": l.level, "e0": l.e0, "e1": l.e1, "e2": l.e2,
                         "total": l.total} for l in lvls]
                payload = _rows_payload(rows, ["n", "e0", "e1", "e2", "total"],
                                        "json")
            else:
                payload = report.spt_levels_csv(lvls)
            _emit(payload, cfg)
        elif method == "analytic":
            if model.v0 != 1.0:
                raise ValueError("the closed-form ground state requires v0 = 1")
            if levels != [0]:
                raise ValueError("analytic solution exists only for level 0")
            rows = [{"n": 0, "energy": analytic.GROUND_STATE_ENERGY}]
            _emit(_rows_payload(rows, ["n", "energy"], cfg.format), cfg)
        else:  # all
            table = report.build_table(max(levels) + 1, model, cfg.grid(),
                                       wkb_tol=cfg.wkb_tol,
                                       scan_step=cfg.scan_step,
                                       bisect_tol=cfg.bisect_tol)
            _emit_table(table, cfg)
            _plot(cfg, lambda p: figures.save_table_figure(table, p))
    except click.ClickException:
        raise
    except Exception as exc:
        _fail(exc)


def cfg_dict(cfg: RunConfig) -> dict:
    return {"v0": cfg.v0, "n_grid": cfg.n_grid, "scan_step": cfg.scan_step,
            "bisect_tol": cfg.bisect_tol, "wkb_tol": cfg.wkb_tol}


@main.command()
@click.option("--levels", "levels_spec", default="0..8", show_default=True,
              help="level range 'a..b' (half-open)")
@_common_options
def compare(levels_spec, v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
            plot, config_path):
    """Cross-method energy table (WKB, perturbation theory, Numerov)."""
    cfg = _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
                        plot, config_path)
    levels = _parse_levels(levels_spec)
    try:
        table = report.build_table(max(levels) + 1, cfg.model(), cfg.grid(),
                                   wkb_tol=cfg.wkb_tol,
                                   scan_step=cfg.scan_step,
                                   bisect_tol=cfg.bisect_tol)
        wanted = set(levels)
        table = report.ComparisonTable(
            rows=tuple(r for r in table.rows if r["n"] in wanted),
            units=table.units, config=table.config, errors=table.errors)
        _emit_table(table, cfg)
        _plot(cfg, lambda p: figures.save_table_figure(table, p))
    except click.ClickException:
        raise
    except Exception as exc:
        _fail(exc)


@main.command()
@click.option("--level", type=int, required=True, help="level index")
@click.option("--methods", "methods_spec", default="numerov",
              show_default=True, help="comma-separated method list")
@_common_options
def wavefunction(level, methods_spec, v0, n_grid, scan_step, bisect_tol,
                 wkb_tol, fmt, out, plot, config_path):
    """One method gives the state as x,psi,psi_sq; several methods give
    aligned |psi|^2 overlay columns."""
    cfg = _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
                        plot, config_path)
    if level < 0:
        raise click.UsageError("--level must be >= 0")
    methods = [m.strip() for m in methods_spec.split(",") if m.strip()]
    if not methods:
        raise click.UsageError("--methods must name at least one method")
    for m in methods:
        if m not in ("numerov", "wkb", "spt", "analytic"):
            raise click.UsageError(f"unknown wavefunction method {m!r}")
    try:
        grid = cfg.grid()
        if len(methods) == 1:
            sol = report.solve_wavefunction(methods[0], level, cfg.model(),
                                            grid)
            if cfg.format == "json":
                rows = [{"x": float(x), "psi": float(p),
                         "psi_sq": float(p * p)}
                        for x, p in zip(grid.nodes, sol.wavefunction)]
                payload = _rows_payload(rows, ["x", "psi", "psi_sq"], "json")
            else:
                payload = report.wavefunction_csv(sol, grid)
            _emit(payload, cfg)
            panel = report.Panel(level=level, methods=(methods[0],),
                                 x=grid.nodes,
                                 curves={methods[0]: sol.wavefunction ** 2})
            _plot(cfg, lambda p: figures.save_panels_figure([panel], p))
        else:
            panel = report.figure_panels([(level, tuple(methods))],
                                         cfg.model(), grid)[0]
            payload = (report.panel_json(panel) if cfg.format == "json"
                       else report.panel_csv(panel))
            _emit(payload, cfg)
            _plot(cfg, lambda p: figures.save_panels_figure([panel], p))
    except click.ClickException:
        raise
    except Exception as exc:
        _fail(exc)


@main.command()
@click.option("--level", type=int, default=0, show_default=True,
              help="level index")
@click.option("--grids", "grids_spec", default="500,1000,2000,4000",
              show_default=True, help="comma-separated grid sizes")
@_common_options
def convergence(level, grids_spec, v0, n_grid, scan_step, bisect_tol, wkb_tol,
                fmt, out, plot, config_path):
    """Eigenvalue error versus grid spacing with observed order."""
    cfg = _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
                        plot, config_path)
    try:
        sizes = [int(s) for s in grids_spec.split(",") if s.strip()]
    except ValueError:
        raise click.UsageError(f"invalid --grids {grids_spec!r}")
    if len(sizes) < 2:
        raise click.UsageError("need at least two grid sizes")
    for n in sizes:
        if n % 2 or n < 100:
            raise click.UsageError(f"grid size {n} must be even and >= 100")
    if level < 0:
        raise click.UsageError("--level must be >= 0")
    try:
        rows = report.convergence_study(level, sizes, cfg.model(),
                                        scan_step=cfg.scan_step)
        payload = (report.study_json(rows) if cfg.format == "json"
                   else report.study_csv(rows))
        _emit(payload, cfg)
        _plot(cfg, lambda p: figures.save_convergence_figure(rows, p))
    except click.ClickException:
        raise
    except Exception as exc:
        _fail(exc)


@main.command()
@_common_options
def potential(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out, plot,
              config_path):
    """Sampled well profile (x, v) with walls capped."""
    cfg = _build_config(v0, n_grid, scan_step, bisect_tol, wkb_tol, fmt, out,
                        plot, config_path)
    try:
        model = cfg.model()
        grid = cfg.grid()
        if cfg.format == "json":
            rows = [{"x": float(x), "v": float(v)}
                    for x, v in model.profile(grid)]
            payload = _rows_payload(rows, ["x", "v"], "json")
        else:
            payload = report.profile_csv(model, grid)
        _emit(payload, cfg)
        _plot(cfg, lambda p: figures.save_potential_figure(model, grid, p))
    except click.ClickException:
        raise
    except Exception as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
