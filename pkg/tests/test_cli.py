"""End-to-end command-line interface behavior."""

import pytest

from fraclab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestSelftest:
    def test_passes(self, capsys):
        code, out = run(capsys, "selftest")
        assert code == 0
        assert "[FAIL]" not in out
        assert out.count("[PASS]") >= 5
        assert "selftest: ok" in out


class TestSolve:
    def test_prints_certified_value(self, capsys):
        code, out = run(
            capsys, "solve", "--d", "1", "--s", "0.5",
            "--datum", "prop42", "--x", "0.5",
        )
        assert code == 0
        assert "u(0.5) =" in out
        assert "converged=True" in out


class TestSweeps:
    def test_lower_sweep_d1_exits_clean(self, capsys, tmp_path):
        code, out = run(
            capsys, "sweep-lower", "--d", "1", "--datum", "prop42",
            "--tol", "1e-7", "--out-dir", str(tmp_path),
        )
        assert code == 0
        assert "holds" in out
        assert (tmp_path / "rows.csv").exists()

    def test_blowup_divergent_case(self, capsys, tmp_path):
        code, out = run(
            capsys, "blowup", "--d", "1", "--datum", "cex14",
            "--modulus", "log_inverse:1", "--tol", "1e-7",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        assert "strictly increasing: True" in out


class TestChecks:
    def test_check_dini(self, capsys):
        code, out = run(capsys, "check-dini", "--modulus", "log_inverse:2")
        assert code == 0
        assert "satisfied" in out

    def test_check_geometry_ball(self, capsys):
        code, out = run(
            capsys, "check-geometry", "--domain", "ball", "--d", "2",
            "--samples", "2000", "--boundary-points", "4",
        )
        assert code == 0
        assert "passes" in out

    def test_check_geometry_cusp_finds_witness(self, capsys):
        code, out = run(
            capsys, "check-geometry", "--domain", "cusp", "--d", "2",
            "--samples", "5000",
        )
        assert code == 0
        assert "witness" in out


class TestApplyOperator:
    def test_bump_reference(self, capsys):
        code, out = run(
            capsys, "apply-operator", "--d", "1", "--s", "0.5",
            "--measure", "uniform:2", "--x", "0",
        )
        assert code == 0
        assert "A u(0) =" in out


def test_unknown_command_exits_with_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
