"""Tests for potentials, the energy form and the resistance metric."""

import math

import numpy as np
import pytest

from spectral_lab.core.graph import ROOT, TruncatedTree, all_words
from spectral_lab.spectral.resistance import (
    covariance,
    covariance_matrix,
    edge_currents,
    effective_resistance,
    energy,
    energy_laplacian_pairing,
    independent_increments_check,
    kirchhoff_residual,
    neg_semidefinite_check,
    potential,
    potential_uniqueness_spread,
    potential_value,
    resistance_dist,
    resistance_dist_four_potential,
    solve_potential,
)


@pytest.fixture
def tree() -> TruncatedTree:
    return TruncatedTree(2, 5)


class TestPotential:
    """Tests for v_η and its defining equation."""

    def test_values(self) -> None:
        assert potential_value((1, 2), ROOT) == 2
        assert potential_value((1, 2), (1, 1)) == 1
        assert potential_value((1, 2), (1, 2, 2)) == 0
        assert potential_value((1, 2), (2,)) == 2

    @pytest.mark.parametrize("target", [(1,), (1, 2), (2, 2, 1), (1, 1, 1, 2)])
    def test_solves_laplace(self, tree: TruncatedTree, target: tuple[int, ...]) -> None:
        pot = potential(target, tree)
        assert pot.interior_residual() < 1e-12
        assert kirchhoff_residual(pot) < 1e-12
        assert pot(target) == 0.0
        assert pot(ROOT) == float(len(target))

    def test_unit_current_along_path(self, tree: TruncatedTree) -> None:
        pot = potential((2, 1), tree)
        currents = edge_currents(pot)
        on_path = [tree.index((2,)), tree.index((2, 1))]
        assert currents[on_path].tolist() == [1.0, 1.0]
        off_path = np.delete(currents, on_path)
        assert np.all(off_path == 0.0)

    def test_rejects_root(self, tree: TruncatedTree) -> None:
        with pytest.raises(ValueError, match="root"):
            potential(ROOT, tree)

    def test_rejects_shallow_tree(self) -> None:
        with pytest.raises(ValueError, match="depth"):
            potential((1, 2, 1), TruncatedTree(2, 3))

    def test_grounded_solve_agrees_up_to_constant(self, tree: TruncatedTree) -> None:
        assert potential_uniqueness_spread((1, 2), tree) < 1e-9
        solved = solve_potential((1, 2), tree, ground=0)
        assert solved[0] == 0.0

    def test_grounded_solve_rejects_ground(self, tree: TruncatedTree) -> None:
        with pytest.raises(ValueError, match="ground"):
            solve_potential((1,), tree, ground=tree.vertex_count)


class TestMetric:
    """Tests for the resistance distance."""

    def test_examples(self) -> None:
        assert resistance_dist((1, 2), (1, 1)) == 2.0
        assert resistance_dist((1, 2), (2,)) == pytest.approx(math.sqrt(6.0))
        assert resistance_dist((1,), (1,)) == 0.0

    def test_four_potential_formula(self) -> None:
        words = list(all_words(2, 3))
        for x in words:
            for y in words:
                assert resistance_dist_four_potential(x, y) == pytest.approx(
                    resistance_dist(x, y), abs=1e-12
                )

    def test_triangle_inequality(self) -> None:
        words = list(all_words(3, 2))
        for x in words:
            for y in words:
                for z in words:
                    assert resistance_dist(x, z) <= (
                        resistance_dist(x, y) + resistance_dist(y, z) + 1e-12
                    )

    def test_matches_networkx(self) -> None:
        tree = TruncatedTree(3, 3)
        for x, y in [((1,), (2, 3)), ((1, 1, 1), (1, 1, 2)), (ROOT, (3, 3, 3))]:
            assert resistance_dist(x, y) ** 2 == pytest.approx(
                2.0 * effective_resistance(tree, x, y), abs=1e-9
            )
        assert effective_resistance(tree, (1,), (1,)) == 0.0


class TestEnergy:
    """Tests for the energy form and the potential covariance."""

    def test_covariance_is_twice_common_prefix(self) -> None:
        assert covariance((1, 2), (1, 1)) == 2.0
        assert covariance((1, 2, 1), (1, 2, 2)) == 4.0
        assert covariance((2,), (1,)) == 0.0

    def test_covariance_is_energy_of_potentials(self, tree: TruncatedTree) -> None:
        words = [w for w in all_words(2, 3) if w]
        for x in words:
            for y in words:
                ex = potential(x, tree).values
                ey = potential(y, tree).values
                assert energy(ex, ey, tree) == pytest.approx(covariance(x, y), abs=1e-12)

    def test_covariance_matrix_psd(self) -> None:
        words = [w for w in all_words(2, 4) if w]
        gram = covariance_matrix(words)
        assert np.allclose(gram, gram.T)
        assert np.linalg.eigvalsh(gram).min() >= -1e-10

    def test_energy_is_laplacian_pairing(self, tree: TruncatedTree) -> None:
        rng = np.random.default_rng(5)
        u = rng.standard_normal(tree.vertex_count)
        assert energy(u, u, tree) == pytest.approx(energy_laplacian_pairing(u, tree), rel=1e-12)

    def test_energy_with_potential_reads_values(self, tree: TruncatedTree) -> None:
        rng = np.random.default_rng(6)
        u = rng.standard_normal(tree.vertex_count)
        eta = (2, 1, 2)
        v = potential(eta, tree).values
        expected = 2.0 * (u[0] - u[tree.index(eta)])
        assert energy(u, v, tree) == pytest.approx(expected, abs=1e-10)

    def test_complex_energy_is_hermitian(self, tree: TruncatedTree) -> None:
        rng = np.random.default_rng(7)
        u = rng.standard_normal(tree.vertex_count) + 1j * rng.standard_normal(tree.vertex_count)
        w = rng.standard_normal(tree.vertex_count) + 1j * rng.standard_normal(tree.vertex_count)
        assert energy(u, w, tree) == pytest.approx(np.conj(energy(w, u, tree)))

    def test_negative_semidefinite(self) -> None:
        words = list(all_words(2, 3))
        rng = np.random.default_rng(8)
        for _ in range(200):
            assert neg_semidefinite_check(words, rng.standard_normal(len(words))) <= 1e-10

    def test_negative_semidefinite_rejects_shape(self) -> None:
        with pytest.raises(ValueError, match="shape"):
            neg_semidefinite_check([(1,), (2,)], np.ones(3))

    def test_independent_increments(self) -> None:
        assert independent_increments_check((1,), (1, 2), (1, 2, 1)) == 0.0
        assert independent_increments_check(ROOT, (2,), (2, 2, 2)) == 0.0

    def test_independent_increments_rejects_unnested(self) -> None:
        with pytest.raises(ValueError, match="nested"):
            independent_increments_check((1,), (2, 1), (2, 1, 1))
