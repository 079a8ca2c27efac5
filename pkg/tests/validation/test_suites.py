"""Tests for the verification suites and the suite registry."""

import json

import pytest

from spectral_lab import __version__
from spectral_lab.core.config import VerifyConfig
from spectral_lab.validation import ALL_SUITES, SUITES, run_suite


@pytest.fixture
def quick_config() -> VerifyConfig:
    """Small Monte Carlo budget, single worker."""
    return VerifyConfig(seed=7, trials=20_000, threads=1, branchings=(2,))


class TestRegistry:
    """Tests for run_suite dispatch."""

    def test_suite_order(self) -> None:
        assert list(SUITES) == [
            "operators",
            "cyclic",
            "measures",
            "resistance",
            "walks",
            "eigen",
            "lattice",
        ]
        assert ALL_SUITES == "all"

    def test_unknown_suite(self) -> None:
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("nope", VerifyConfig())

    def test_version_is_stamped(self) -> None:
        report = run_suite("eigen", VerifyConfig())
        assert report.version == __version__


class TestSuites:
    """Each suite passes with its own defaults or a restricted branching."""

    def test_eigen(self) -> None:
        report = run_suite("eigen", VerifyConfig())
        assert report.all_passed, report.summary()
        assert report.suite == "eigen"
        assert any(c.name == "eigen.period[lambda=golden-]" for c in report.checks)

    def test_operators(self, quick_config: VerifyConfig) -> None:
        report = run_suite("operators", quick_config)
        assert report.all_passed, report.summary()
        assert report.parameters["branchings"] == [2]

    def test_resistance(self, quick_config: VerifyConfig) -> None:
        report = run_suite("resistance", quick_config)
        assert report.all_passed, report.summary()

    def test_walks(self, quick_config: VerifyConfig) -> None:
        report = run_suite("walks", quick_config)
        assert report.all_passed, report.summary()

    def test_cyclic(self, quick_config: VerifyConfig) -> None:
        report = run_suite("cyclic", quick_config)
        assert report.all_passed, report.summary()

    def test_measures(self) -> None:
        report = run_suite("measures", VerifyConfig(trials=1))
        assert report.all_passed, report.summary()
        prefix = "measures.boundary_density_halving"
        halving = [c for c in report.checks if c.name.startswith(prefix)]
        assert len(halving) == 3

    def test_lattice(self) -> None:
        report = run_suite("lattice", VerifyConfig(trials=1))
        assert report.all_passed, report.summary()
        assert report.failed_count == 0


class TestBranchingOverride:
    """How suites treat a requested branching."""

    def test_cyclic_single_letter_skips_blocks(self) -> None:
        report = run_suite("cyclic", VerifyConfig(trials=1, branchings=(1,)))
        assert report.all_passed, report.summary()
        skipped = [c.name for c in report.checks if c.skipped]
        assert skipped == ["cyclic.block_entries[N=1,D=8]"]

    @pytest.mark.parametrize("suite", ["measures", "eigen", "lattice"])
    def test_fixed_suites_record_ignored_branchings(self, suite: str) -> None:
        report = run_suite(suite, VerifyConfig(trials=1, branchings=(3,)))
        assert report.parameters["ignored_branchings"] == [3]

    def test_default_run_has_no_ignored_branchings(self) -> None:
        report = run_suite("eigen", VerifyConfig())
        assert "ignored_branchings" not in report.parameters


class TestDeterminism:
    """Reports depend only on the parameters."""

    def test_repeat_runs_are_byte_identical(self, quick_config: VerifyConfig) -> None:
        first = run_suite("walks", quick_config).to_json()
        second = run_suite("walks", quick_config).to_json()
        assert first == second
        assert json.loads(first)["seed"] == 7

    def test_all_merges_parameters(self, quick_config: VerifyConfig) -> None:
        report = run_suite(ALL_SUITES, quick_config)
        assert report.suite == ALL_SUITES
        assert set(report.parameters) == set(SUITES)
        assert report.all_passed, report.summary()
