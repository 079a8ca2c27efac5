"""Tests for the cyclic decomposition and the truncated spectral measures."""

import math

import numpy as np
import pytest

from spectral_lab.core.graph import TruncatedTree
from spectral_lab.core.operators import jacobi_D_omega, jacobi_moment
from spectral_lab.spectral.cyclic import (
    OMEGA,
    CyclicLabel,
    cyclic_labels,
    cyclic_vector,
    kolmogorov_distance,
    level_rank,
    max_weight_decay,
    orthobasis_with_s0,
    truncated_spectral_measure,
    verify_block_structure,
)
from spectral_lab.spectral.walks import moment_chain


class TestOrthobasis:
    """Tests for the basis completing s_0."""

    @pytest.mark.parametrize("branching", [1, 2, 3, 4, 7])
    def test_orthonormal_with_s0_first(self, branching: int) -> None:
        basis = orthobasis_with_s0(branching)
        assert np.allclose(basis @ basis.T, np.eye(branching), atol=1e-14)
        assert np.allclose(basis[0], np.full(branching, 1.0 / math.sqrt(branching)))

    def test_rejects_zero(self) -> None:
        with pytest.raises(ValueError):
            orthobasis_with_s0(0)


class TestLabels:
    """Tests for cyclic labels."""

    def test_omega(self) -> None:
        label = CyclicLabel()
        assert label.is_omega
        assert str(label) == OMEGA
        assert len(label) == 0

    def test_rejects_trailing_one(self) -> None:
        with pytest.raises(ValueError, match="must not end"):
            CyclicLabel((2, 1))

    def test_enumeration(self) -> None:
        labels = cyclic_labels(2, 2)
        assert [label.word for label in labels] == [(), (2,), (1, 2), (2, 2)]

    @pytest.mark.parametrize(("branching", "length"), [(1, 4), (2, 5), (3, 3)])
    def test_count_matches_level_size(self, branching: int, length: int) -> None:
        assert len(cyclic_labels(branching, length)) == branching**length


class TestCyclicVectors:
    """Tests for the chains and the block structure of Δ."""

    def test_level_one_vector_is_basis_row(self) -> None:
        tree = TruncatedTree(3, 3)
        vec = cyclic_vector((2,), 0, tree)
        span = tree.level(1)
        assert np.allclose(vec.values[span.start : span.stop], orthobasis_with_s0(3)[1])
        assert vec.word_length == 1

    def test_omega_chain_is_flat(self) -> None:
        tree = TruncatedTree(2, 4)
        vec = cyclic_vector(CyclicLabel(), 3, tree)
        span = tree.level(3)
        assert np.allclose(vec.values[span.start : span.stop], 2.0 ** (-1.5))
        assert np.linalg.norm(vec.values) == pytest.approx(1.0)

    def test_rejects_too_deep(self) -> None:
        with pytest.raises(ValueError, match="needs depth"):
            cyclic_vector((2,), 3, TruncatedTree(2, 3))

    @pytest.mark.parametrize("branching", [2, 3])
    def test_block_structure(self, branching: int) -> None:
        block = verify_block_structure(TruncatedTree(branching, 6), 3)
        assert block.worst < 1e-12
        assert block.vectors == len(cyclic_labels(branching, 2)) * 4

    def test_block_structure_needs_depth(self) -> None:
        with pytest.raises(ValueError, match="too small"):
            verify_block_structure(TruncatedTree(2, 4), 3)

    @pytest.mark.parametrize("branching", [1, 2, 3])
    def test_completeness(self, branching: int) -> None:
        tree = TruncatedTree(branching, 4)
        for m in range(5):
            assert level_rank(tree, m) == (branching**m, branching**m)


class TestTruncatedMeasure:
    """Tests for the δ_0 spectral measure of truncated D_Ω."""

    def test_probability(self) -> None:
        measure = truncated_spectral_measure(2, 30)
        assert measure.total_mass == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(measure.eigenvalues) >= 0)

    def test_moments_match_jacobi(self) -> None:
        measure = truncated_spectral_measure(3, 12)
        matrix = jacobi_D_omega(3, 12)
        for n in range(12):
            assert measure.moment(n) == pytest.approx(jacobi_moment(matrix, n), rel=1e-9)

    @pytest.mark.parametrize("branching", [1, 2, 3])
    def test_moments_match_path_counts(self, branching: int) -> None:
        measure = truncated_spectral_measure(branching, 10)
        for n in range(19):
            expected = moment_chain(branching, n).from_paths
            assert measure.moment(n) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("branching", [1, 2, 4])
    def test_spectrum_inside_interval(self, branching: int) -> None:
        measure = truncated_spectral_measure(branching, 200)
        root = math.sqrt(branching)
        assert measure.eigenvalues.min() >= (root - 1.0) ** 2 - 0.05
        assert measure.eigenvalues.max() <= (root + 1.0) ** 2 + 0.05

    def test_weak_convergence(self) -> None:
        assert kolmogorov_distance(truncated_spectral_measure(2, 200), 2) <= 0.02

    def test_max_weight_decays(self) -> None:
        decay = max_weight_decay(2, [25, 50, 100, 200])
        weights = [w for _, w in decay]
        assert [m for m, _ in decay] == [25, 50, 100, 200]
        assert all(a > b for a, b in zip(weights, weights[1:]))
