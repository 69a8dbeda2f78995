from ppwin.experiments import sweep
from ppwin.figures import reports_figure, sweep_figure
from ppwin.model import Variant
from ppwin.verify import LemmaReport, parseval_check


def test_sweep_figure_written(tmp_path):
    table = sweep(Variant.RPP_FULL, [(2, 2)], [1000, 2000], [0.5, 0.8])
    out = tmp_path / "sweep.png"
    sweep_figure(table, out)
    assert out.stat().st_size > 1000


def test_reports_figure_written(tmp_path):
    reports = [
        parseval_check(2, 100),
        LemmaReport.bound("demo-bound", 0.4, 1.0),
        LemmaReport.info("demo-info", 2.0, 1.0),
        LemmaReport.identity("demo-fail", 2.0, 1.0, 1e-10),
    ]
    out = tmp_path / "reports.png"
    reports_figure(reports, out)
    assert out.stat().st_size > 1000
