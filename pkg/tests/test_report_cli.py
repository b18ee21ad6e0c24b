import csv
import io
import json
import math
import os

import pytest

from nlqed import renorm, verify
from nlqed.cli import main
from nlqed.gauge import certify_unique_root
from nlqed.report import (
    ReportOptions,
    document_from_json,
    format_float,
    gauge_csv,
    run_report,
    to_json,
)


@pytest.fixture(scope="module")
def default_doc():
    return run_report()


def test_default_report(default_doc):
    assert abs(default_doc.z_ratios.renormalized_alpha_inv - 137.0345) <= 5e-4
    assert default_doc.coupling_bare_inv == 136.0
    assert default_doc.gauge_scan.unique_root_at_zero
    assert [m.name for m in default_doc.lepton_moments] == ["electron", "muon", "tau"]
    assert default_doc.converged
    assert default_doc.config_echo["prediction_alpha_inv"] == 137.0359


def test_alpha_override_reaches_g2():
    doc = run_report(ReportOptions(alpha_inv=137.0359, gauge_points=10))
    assert abs(doc.g2_comparison.theory_local - 0.0011655102) <= 2e-9
    assert doc.coupling_bare_inv == 137.0359


def test_two_point_gauge_grid():
    doc = run_report(ReportOptions(gauge_points=2))
    assert doc.gauge_scan.points == 2
    assert doc.gauge_scan.unique_root_at_zero


def test_round_trip(default_doc):
    again = document_from_json(to_json(default_doc))
    assert again == default_doc
    assert to_json(again) == to_json(default_doc)


def test_byte_identical_repeat():
    opts = ReportOptions(gauge_points=60)
    assert to_json(run_report(opts)) == to_json(run_report(opts))


def test_json_floats_have_17_digits(default_doc):
    text = to_json(default_doc)
    data = json.loads(text)
    assert data["z_ratios"]["renormalized_alpha_inv"] == default_doc.z_ratios.renormalized_alpha_inv
    assert '"renormalized_alpha_inv": 137.03450713009732' in text
    assert '"mass": 0.10000000000000001' in text
    assert text.endswith("\n")


@pytest.mark.parametrize("x", [0.1, 1.0, 1e-300, -2.5e17, 137.0359, math.pi])
def test_format_float_round_trips(x):
    text = format_float(x)
    assert float(text) == x
    assert isinstance(json.loads(text), float)


def test_format_float_rejects_nan():
    with pytest.raises(ValueError):
        format_float(math.nan)


def test_gauge_csv_layout():
    scan = certify_unique_root(0.1, 2.0, 5)
    text = gauge_csv(scan)
    assert text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["m", "g_value", "residual"]
    assert len(rows) == 6
    for (m, g), row in zip(scan.grid, rows[1:]):
        assert float(row[0]) == m and float(row[1]) == g
        assert float(row[2]) == g - math.pi / 2


class TestCli:
    def test_report_text(self, capsys):
        assert main(["report", "--gauge-points", "20"]) == 0
        out = capsys.readouterr().out
        assert "137.034507" in out
        assert "only root at m = 0       yes" in out

    def test_report_json_file(self, tmp_path):
        path = tmp_path / "report.json"
        assert main(["report", "--format", "json", "--out", str(path)]) == 0
        doc = document_from_json(path.read_text())
        assert abs(doc.z_ratios.renormalized_alpha_inv - 137.0345) <= 5e-4

    def test_report_is_reproducible(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["--format", "json", "report", "--gauge-points", "30", "--out", str(a)])
        main(["report", "--format", "json", "--gauge-points", "30", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_report_csv_is_gauge_grid(self, capsys):
        assert main(["report", "--format", "csv", "--gauge-points", "7"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "m,g_value,residual" and len(lines) == 8

    def test_zratio_mass(self, capsys):
        assert main(["zratio", "--mass", "30", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        a = 1 / 136.0
        assert abs((1 - data["z1_over_z2"]) / (a / 1800.0) - 1) <= 0.02

    def test_gauge_command(self, capsys):
        assert main(["gauge", "--min", "0.01", "--max", "50", "--points", "500", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["unique_root_at_zero"] is True
        assert len(data["grid"]) == 500

    def test_moment_regimes(self, capsys):
        assert main(["moment", "--mass", "1.78", "--regime", "large", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert abs(data["large_m"] - 0.001151584) <= 2e-9
        assert data["exact"] is None

    def test_leptons_csv(self, capsys):
        assert main(["leptons", "--format", "csv"]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [r["name"] for r in rows] == ["electron", "muon", "tau"]

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["nonsense"])
        assert exc.value.code == 2
        assert main(["gauge", "--min", "3", "--max", "1"]) == 2
        assert main(["moment", "--mass", "-1"]) == 2
        assert main(["--alpha-inv", "0.5", "zratio"]) == 2

    def test_unwritable_output(self, tmp_path):
        locked = tmp_path / "locked"
        locked.mkdir()
        os.chmod(locked, 0o500)
        target = locked / "out.txt"
        try:
            if os.access(locked, os.W_OK):
                target = tmp_path / "missing" / "out.txt"
            assert main(["report", "--gauge-points", "3", "--out", str(target)]) == 2
            assert main(["verify", "--out", str(target)]) == 2
        finally:
            os.chmod(locked, 0o700)

    def test_non_convergence_is_marked_not_fatal(self, capsys, monkeypatch):
        from nlqed import moments
        from nlqed.quadrature import QuadratureResult

        real = moments.integrate_finite

        def starved(*args, **kwargs):
            r = real(*args, **kwargs)
            return QuadratureResult(r.value, r.error_estimate, r.evaluations, False)

        monkeypatch.setattr(moments, "integrate_finite", starved)
        assert main(["report", "--gauge-points", "5", "--format", "json"]) == 1
        data = json.loads(capsys.readouterr().out)
        assert [m["converged"] for m in data["lepton_moments"]] == [False] * 3
        assert data["z_ratios"]["converged"] is True
        assert main(["moment", "--mass", "0.1"]) == 1


class TestVerify:
    def test_exit_code_tracks_checks(self, capsys):
        results = verify.run_checks()
        code = main(["verify"])
        out = capsys.readouterr().out
        assert code == (0 if all(c.passed for c in results) else 1)
        assert out.count("[PASS]") + out.count("[FAIL]") == len(results)

    def test_only_local_g2_fixture_fails(self):
        failed = [c.name for c in verify.run_checks() if not c.passed]
        assert all(name.startswith("9:") for name in failed)

    def test_mutated_shift_is_caught(self, monkeypatch):
        monkeypatch.setattr(renorm, "ALPHA_INV_SHIFT", 13.0 / (4.0 * math.pi) + 1e-3)
        checks = verify.check_renormalized_constant()
        assert not all(c.passed for c in checks)
        assert main(["verify"]) == 1
