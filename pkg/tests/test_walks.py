"""Tests for closed-walk counts, return probabilities and the Monte Carlo walk."""

import math
from fractions import Fraction

import numpy as np
import pytest

from spectral_lab.core.graph import TruncatedTree
from spectral_lab.spectral.walks import (
    PATH_COUNT_MAX_STEPS,
    WalkConfig,
    WalkCounter,
    WalkEstimate,
    count_closed_walks_bruteforce,
    moment_chain,
    moment_identity_check,
    path_count,
    return_probability_exact,
    return_probability_matrix_free,
    transition_identity_residual,
    walk_simulate,
)


class TestPathCount:
    """Tests for the exact closed-walk counts N_T̃(n)."""

    def test_small_values(self) -> None:
        assert [path_count(2, n) for n in range(5)] == [1, 1, 3, 5, 15]

    def test_half_line_is_central_binomial(self) -> None:
        for n in range(21):
            assert path_count(1, n) == math.comb(n, n // 2)

    @pytest.mark.parametrize("branching", [1, 2, 3])
    def test_matches_bruteforce(self, branching: int) -> None:
        for n in range(8):
            assert path_count(branching, n) == count_closed_walks_bruteforce(branching, n)

    @pytest.mark.parametrize("branching", [1, 2, 3, 4])
    def test_level_distribution_totals(self, branching: int) -> None:
        counter = WalkCounter(branching, 12)
        for step in range(13):
            assert sum(counter.level_distribution(step)) == (branching + 1) ** step

    def test_large_counts_stay_exact(self) -> None:
        count = path_count(3, 200)
        assert isinstance(count, int)
        assert count > 2**63

    def test_rejects_negative(self) -> None:
        with pytest.raises(ValueError):
            path_count(2, -1)

    def test_cap(self) -> None:
        with pytest.raises(OverflowError):
            WalkCounter(2, PATH_COUNT_MAX_STEPS + 1)

    def test_step_out_of_range(self) -> None:
        with pytest.raises(ValueError, match="outside"):
            WalkCounter(2, 4).closed_walks(5)


class TestReturnProbability:
    """Tests for the exact and matrix-free return probabilities."""

    def test_exact_fraction(self) -> None:
        assert return_probability_exact(2, 2) == Fraction(1, 3)
        assert return_probability_exact(2, 4) == Fraction(15, 81)

    @pytest.mark.parametrize("branching", [1, 2, 3, 4])
    def test_matrix_free_matches_exact(self, branching: int) -> None:
        for n in range(15):
            exact = float(return_probability_exact(branching, n))
            assert return_probability_matrix_free(branching, n) == pytest.approx(exact, abs=1e-12)

    def test_transition_identity(self) -> None:
        tree = TruncatedTree(2, 5)
        rng = np.random.default_rng(11)
        v = rng.standard_normal(tree.vertex_count)
        v[tree.depths == tree.depth] = 0.0
        assert transition_identity_residual(tree, v) < 1e-12

    def test_transition_identity_rejects_boundary_mass(self) -> None:
        tree = TruncatedTree(2, 3)
        with pytest.raises(ValueError, match="boundary"):
            transition_identity_residual(tree, np.ones(tree.vertex_count))


class TestMoments:
    """Tests for the moment identities behind the walk counts."""

    @pytest.mark.parametrize("branching", [1, 2, 3, 4])
    def test_moment_identity(self, branching: int) -> None:
        for n in range(21):
            assert moment_identity_check(branching, n) < 1e-9

    def test_moment_identity_rejects_order(self) -> None:
        with pytest.raises(ValueError, match="moment order"):
            moment_identity_check(2, 32, nodes=16)

    @pytest.mark.parametrize("branching", [1, 2, 3])
    def test_moment_chain(self, branching: int) -> None:
        for n in range(13):
            chain = moment_chain(branching, n)
            assert chain.order == n
            assert chain.relative_error < 1e-9

    def test_moment_chain_first_orders(self) -> None:
        assert moment_chain(2, 0).from_paths == 1
        assert moment_chain(2, 1).from_paths == 2
        assert moment_chain(2, 2).from_paths == 6


class TestSimulation:
    """Tests for the seeded Monte Carlo walk."""

    def test_config_validation(self) -> None:
        with pytest.raises(ValueError, match="trials"):
            WalkConfig(branching=2, steps=4, trials=0)
        with pytest.raises(ValueError, match="workers"):
            WalkConfig(branching=2, steps=4, trials=10, workers=0)
        with pytest.raises(ValueError, match="seed"):
            WalkConfig(branching=2, steps=4, trials=10, seed=-1)

    def test_zero_steps_always_returns(self) -> None:
        estimate = walk_simulate(WalkConfig(branching=2, steps=0, trials=17))
        assert estimate.returns == 17
        assert estimate.frequency == 1.0

    def test_deterministic(self) -> None:
        cfg = WalkConfig(branching=2, steps=6, trials=20_000, seed=7, workers=3)
        assert walk_simulate(cfg) == walk_simulate(cfg)

    def test_close_to_exact(self) -> None:
        cfg = WalkConfig(branching=2, steps=4, trials=200_000, seed=7, workers=2)
        estimate = walk_simulate(cfg)
        exact = float(return_probability_exact(2, 4))
        assert estimate.trials == 200_000
        assert estimate.z_score(exact) <= 4.0

    def test_z_score_degenerate(self) -> None:
        assert WalkEstimate(10, 10).z_score(1.0) == 0.0
        assert WalkEstimate(9, 10).z_score(1.0) == math.inf
        assert WalkEstimate(5, 20).standard_error == pytest.approx(math.sqrt(0.25 * 0.75 / 20))
