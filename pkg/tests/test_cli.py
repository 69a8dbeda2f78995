import json
import math

import pytest

from ppwin.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPredict:
    def test_two_squares_constants(self, capsys):
        code, out, _ = run_cli(capsys, "predict", "--l1", "2", "--l2", "2")
        assert code == 0
        assert out.startswith("# config: command=predict")
        assert "c=0.785398163397" in out
        assert "lambda=1 (1)" in out

    def test_theorem_rows_present(self, capsys):
        _, out, _ = run_cli(capsys, "predict", "--l1", "2", "--l2", "3")
        for theorem in ("T1", "T2", "T3", "T4"):
            assert f"{theorem}:" in out
        assert "T4: not applicable" in out  # needs ell2 = 2

    def test_inapplicable_theorems_flagged(self, capsys):
        _, out, _ = run_cli(capsys, "predict", "--l1", "3", "--l2", "3")
        assert "T1: not applicable" in out


class TestCount:
    def test_ratio_line(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--l1", "2", "--l2", "2",
                               "--variant", "rpp-full", "--N", "10000",
                               "--H", "1000")
        assert code == 0
        total = float(out.split("window_total=")[1].splitlines()[0])
        pred = float(out.split("main_term=")[1].splitlines()[0])
        assert pred == pytest.approx(math.pi / 4 * 1000, rel=1e-12)
        assert total > 0

    def test_h_exceeding_domain_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "count", "--l1", "2", "--l2", "2",
                               "--variant", "rpp-full", "--N", "1000",
                               "--H-exp", "1.2")
        assert code == 2
        assert "H must satisfy" in err

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main(["count", "--nonsense"])
        assert info.value.code == 2

    def test_h_flags_mutually_exclusive(self):
        with pytest.raises(SystemExit) as info:
            main(["count", "--l1", "2", "--l2", "2", "--variant", "rpp-full",
                  "--N", "100", "--H", "10", "--H-exp", "0.5"])
        assert info.value.code == 2


class TestExpsum:
    def test_matches_library_value(self, capsys):
        _, out, _ = run_cli(capsys, "expsum", "--kind", "V", "--l", "2",
                            "--alpha", "0.125", "--N", "10000")
        from ppwin.expsums import Frequency, SumKind, classical_sum

        expect = classical_sum(SumKind.V, 2, Frequency(0.125, 10000)).value
        line = out.split("value=")[1].splitlines()[0]
        assert complex(line) == pytest.approx(expect, rel=1e-11)

    def test_damped_reports_truncation(self, capsys):
        _, out, _ = run_cli(capsys, "expsum", "--kind", "omega", "--l", "2",
                            "--alpha", "0", "--N", "10000")
        assert "truncation_bound=" in out


class TestVerify:
    def test_circle_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "circle",
                               "--l1", "2", "--l2", "2", "--N", "1500",
                               "--H", "40")
        assert code == 0
        assert out.count("PASS") == 4
        assert "FAIL" not in out

    def test_reports_written(self, capsys, tmp_path):
        out_path = tmp_path / "reports.json"
        code, _, _ = run_cli(capsys, "verify", "--suite", "parseval",
                             "--N", "1000", "--out", str(out_path))
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert all(r["verdict"] == "pass" for r in payload["reports"])
        assert (tmp_path / "reports.png").exists()


class TestSweepCommand:
    def _config(self, tmp_path, **overrides):
        conf = {
            "variant": "rpp-full",
            "ell_pairs": [[2, 2]],
            "N_list": [1000, 2000],
            "theta_list": [0.5, 0.8],
            "out": str(tmp_path / "table.csv"),
            "format": "both",
        }
        conf.update(overrides)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(conf))
        return path

    def test_end_to_end_outputs(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "sweep", "--config",
                               str(self._config(tmp_path)))
        assert code == 0
        assert (tmp_path / "table.csv").exists()
        assert (tmp_path / "table.json").exists()
        assert (tmp_path / "table.png").exists()
        header = (tmp_path / "table.csv").read_text().splitlines()[0]
        assert header == ("ell1,ell2,variant,N,theta,H,observed,predicted,"
                          "ratio,in_range,wall_ms")

    def test_no_figures_flag(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "sweep", "--config",
                             str(self._config(tmp_path)), "--no-figures")
        assert code == 0
        assert not (tmp_path / "table.png").exists()

    def test_stdout_reproducible(self, capsys, tmp_path):
        conf = self._config(tmp_path, out=None)
        _, out1, _ = run_cli(capsys, "sweep", "--config", str(conf))
        _, out2, _ = run_cli(capsys, "sweep", "--config", str(conf))
        assert out1 == out2  # row lines carry no wall-time fields


class TestVersion:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
