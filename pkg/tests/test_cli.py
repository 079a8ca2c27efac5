"""
Tests for the CLI.

Commands run in-process through typer's CliRunner; tables are parsed back
with pandas.
"""

import io
import json
import re
from pathlib import Path

import pandas as pd
import pytest
from typer.testing import CliRunner

from spectral_lab import __version__
from spectral_lab.cli import app

runner = CliRunner()


def strip_ansi(text: str) -> str:
    """Remove ANSI escape codes from text."""
    return re.sub(r"\x1b\[[0-9;]*m", "", text)


def read_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


class TestCliHelp:
    """Tests for CLI help output."""

    def test_main_help(self) -> None:
        """Test that main --help lists every command."""
        result = runner.invoke(app, ["--help"])
        stdout = strip_ansi(result.stdout)

        assert result.exit_code == 0
        for command in ("density", "moments", "paths", "jacobi", "lattice", "verify", "info"):
            assert command in stdout

    def test_verify_help(self) -> None:
        """Test that verify --help shows its options."""
        result = runner.invoke(app, ["verify", "--help"])
        stdout = strip_ansi(result.stdout)

        assert result.exit_code == 0
        assert "--trials" in stdout
        assert "--seed" in stdout


class TestCliTables:
    """Tests for the table commands."""

    def test_density_semicircle(self) -> None:
        """Test the exact CSV for a three-point grid."""
        result = runner.invoke(app, ["density", "--N", "1", "--measure", "c", "--points", "3"])

        assert result.exit_code == 0
        assert result.stdout == "x,density\n-1,0\n0,0.636619772367581\n1,0\n"

    def test_density_json(self) -> None:
        """Test JSON records for μ_{c+p}."""
        result = runner.invoke(app, ["density", "--N", "2", "--points", "5", "--format", "json"])

        assert result.exit_code == 0
        records = json.loads(result.stdout)
        assert len(records) == 5
        assert records[0] == {"x": -1.0, "density": 0.0}

    def test_density_requires_branching(self) -> None:
        """Test that a missing --N is a usage error."""
        result = runner.invoke(app, ["density", "--points", "3"])

        assert result.exit_code == 2

    def test_density_rejects_zero_branching(self) -> None:
        result = runner.invoke(app, ["density", "--N", "0"])

        assert result.exit_code == 2

    def test_paths(self) -> None:
        """Test closed-walk counts and return probabilities."""
        result = runner.invoke(app, ["paths", "--N", "2", "--n", "10"])

        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert list(frame.columns) == ["n", "closed_walks", "return_probability"]
        assert frame["closed_walks"].tolist()[:5] == [1, 1, 3, 5, 15]
        assert frame["return_probability"][2] == pytest.approx(1.0 / 3.0)
        assert len(frame) == 11

    def test_paths_large_counts_are_exact(self) -> None:
        """Test that counts beyond int64 are written as exact integers."""
        result = runner.invoke(app, ["paths", "--N", "3", "--n", "200", "--format", "json"])

        assert result.exit_code == 0
        last = json.loads(result.stdout)[-1]
        assert int(last["closed_walks"]) > 2**63

    def test_moments_semicircle(self) -> None:
        result = runner.invoke(app, ["moments", "--N", "1", "--measure", "c", "--max-order", "4"])

        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert list(frame.columns) == ["n", "exact", "quadrature"]
        assert frame["exact"].tolist() == [1.0, 0.0, 0.25, 0.0, 0.125]
        assert frame["quadrature"].tolist() == pytest.approx(frame["exact"].tolist(), abs=1e-12)

    def test_moments_perturbed(self) -> None:
        """Test that the independent moment computations agree."""
        result = runner.invoke(app, ["moments", "--N", "2", "--max-order", "8"])

        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert frame["quadrature"].tolist() == pytest.approx(
            frame["paths_scaled"].tolist(), rel=1e-9
        )
        assert frame["jacobi_d_omega"].tolist() == pytest.approx(
            frame["binomial_from_paths"].tolist(), rel=1e-9
        )

    def test_jacobi(self) -> None:
        result = runner.invoke(app, ["jacobi", "--N", "2", "--size", "4"])

        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert list(frame.columns) == ["eigenvalue", "weight"]
        assert len(frame) == 4
        assert frame["weight"].sum() == pytest.approx(1.0, abs=1e-12)

    def test_lattice(self) -> None:
        result = runner.invoke(app, ["lattice", "--d", "1", "--L", "4"])

        assert result.exit_code == 0
        assert "max plane-wave residual" in result.output
        assert "m1,symbol\n0,0\n1,2\n2,4\n3,2\n" in result.output

    def test_output_file(self, tmp_path: Path) -> None:
        """Test that --out writes the table instead of printing it."""
        out = tmp_path / "density.csv"
        result = runner.invoke(
            app, ["density", "--N", "1", "--measure", "c", "--points", "3", "--out", str(out)]
        )

        assert result.exit_code == 0
        assert result.stdout == ""
        assert out.read_text(encoding="utf-8").startswith("x,density\n")


class TestCliQuantities:
    """Tests for the single-quantity commands."""

    def test_resistance(self) -> None:
        result = runner.invoke(app, ["resistance", "--N", "2", "--x", "12", "--y", "11"])

        assert result.exit_code == 0
        assert result.stdout == "x,y,path_length,dist,covariance\n12,11,2,2,2\n"

    def test_resistance_to_root(self) -> None:
        result = runner.invoke(app, ["resistance", "--N", "2", "--x", "12", "--y", "root"])

        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert frame["dist"][0] == pytest.approx(2.0)
        assert frame["covariance"][0] == 0.0

    def test_resistance_rejects_letter(self) -> None:
        result = runner.invoke(app, ["resistance", "--N", "2", "--x", "13", "--y", "1"])

        assert result.exit_code == 2

    def test_eigvec_period(self) -> None:
        """Test that the golden eigenvalue reports period 10."""
        result = runner.invoke(app, ["eigvec", "--lambda", "golden-", "--len", "50"])

        assert result.exit_code == 0
        assert "period: 10" in result.output
        assert "k,value,energy\n0,1,1\n" in result.output

    def test_eigvec_json(self) -> None:
        result = runner.invoke(app, ["eigvec", "--lambda", "1", "--len", "30", "--format", "json"])

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["period"] == 6
        assert len(data["values"]) == 31
        assert data["residual"] < 1e-12

    def test_eigvec_short_has_no_period(self) -> None:
        result = runner.invoke(app, ["eigvec", "--lambda", "1", "--len", "5"])

        assert result.exit_code == 0
        assert "period: none" in result.output

    def test_eigvec_rejects_text(self) -> None:
        result = runner.invoke(app, ["eigvec", "--lambda", "half"])

        assert result.exit_code == 2


class TestCliVerify:
    """Tests for the verify command."""

    def test_verify_eigen(self) -> None:
        """Test that the eigen suite passes and its report is reproducible."""
        first = runner.invoke(app, ["verify", "eigen"])
        second = runner.invoke(app, ["verify", "eigen"])

        assert first.exit_code == 0
        assert first.stdout == second.stdout
        report = json.loads(first.stdout)
        assert report["suite"] == "eigen"
        assert report["all_passed"] is True
        assert report["version"] == __version__
        assert report["seed"] == 7

    def test_verify_text(self) -> None:
        result = runner.invoke(app, ["verify", "eigen", "--format", "text"])

        assert result.exit_code == 0
        assert "✅ All checks passed!" in result.stdout

    def test_verify_walks_restricted(self) -> None:
        result = runner.invoke(
            app, ["verify", "walks", "--N", "2", "--trials", "20000", "--seed", "3"]
        )

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["parameters"]["trials"] == 20000
        assert report["seed"] == 3

    @pytest.mark.parametrize("suite", ["walks", "cyclic", "all"])
    def test_verify_rejects_oversized_branching(self, suite: str) -> None:
        """Test that a branching too large for the suite trees is a usage error."""
        result = runner.invoke(app, ["verify", suite, "--N", "10", "--trials", "1000"])

        assert result.exit_code == 2
        assert "--N" in strip_ansi(result.output)

    def test_verify_unknown_suite(self) -> None:
        result = runner.invoke(app, ["verify", "nope"])

        assert result.exit_code == 2

    def test_verify_bad_thread_env(self) -> None:
        result = runner.invoke(app, ["verify", "eigen"], env={"SPECTRAL_LAB_THREADS": "zero"})

        assert result.exit_code == 2

    def test_verify_writes_file(self, tmp_path: Path) -> None:
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["verify", "eigen", "--out", str(out)])

        assert result.exit_code == 0
        assert json.loads(out.read_text(encoding="utf-8"))["all_passed"] is True


class TestCliInfo:
    """Tests for the info command."""

    def test_info(self) -> None:
        result = runner.invoke(app, ["info"])

        assert result.exit_code == 0
        assert f"spectral-lab {__version__}" in result.stdout
        assert "N=4: [1, 9]" in result.stdout
        assert "lattice" in result.stdout
        assert "SPECTRAL_LAB_THREADS" in result.stdout
