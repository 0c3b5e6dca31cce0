from cotwell import Grid, figures
from cotwell.report import build_table, convergence_study, figure_panels


def _is_png(path):
    return path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_potential_figure(tmp_path, model):
    out = tmp_path / "well.png"
    figures.save_potential_figure(model, Grid(400), str(out))
    assert _is_png(out)


def test_spectrum_figure(tmp_path, spectrum2000):
    out = tmp_path / "levels.png"
    figures.save_spectrum_figure(spectrum2000[:4], str(out))
    assert _is_png(out)


def test_table_figure(tmp_path, model):
    out = tmp_path / "table.png"
    figures.save_table_figure(build_table(3, model, Grid(1000)), str(out))
    assert _is_png(out)


def test_panels_figure(tmp_path, model, grid2000):
    out = tmp_path / "panels.png"
    panels = figure_panels([(0, ("analytic",)), (1, ("spt",))], model,
                           grid2000)
    figures.save_panels_figure(panels, str(out))
    assert _is_png(out)


def test_convergence_figure(tmp_path, model):
    out = tmp_path / "conv.png"
    figures.save_convergence_figure(convergence_study(0, (120, 240), model),
                                    str(out))
    assert _is_png(out)
