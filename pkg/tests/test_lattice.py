"""Tests for the torus Laplacian and its Fourier symbol."""

import math

import numpy as np
import pytest

from spectral_lab.core.graph import LatticeTorus
from spectral_lab.spectral.lattice import (
    apply_lattice_laplacian,
    apply_laplacian_axis,
    apply_shift,
    dft_verify,
    frequencies,
    lattice_eigenvalues_dense,
    lattice_matrix,
    symbol,
    symbol_samples,
)


class TestSymbol:
    """Tests for 4Σ sin²(x_k/2)."""

    def test_values(self) -> None:
        assert symbol(1, [math.pi]) == pytest.approx(4.0)
        assert symbol(2, [[0.0, 0.0], [math.pi, math.pi]]).tolist() == pytest.approx([0.0, 8.0])

    def test_rejects_dimension_mismatch(self) -> None:
        with pytest.raises(ValueError, match="trailing dimension"):
            symbol(3, [0.0, 0.0])

    def test_frequencies_in_c_order(self) -> None:
        freqs = frequencies(LatticeTorus(2, 3))
        assert freqs.shape == (9, 2)
        assert freqs[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]

    def test_samples_sorted_in_range(self) -> None:
        samples = symbol_samples(LatticeTorus(3, 4))
        assert samples.size == 64
        assert np.all(np.diff(samples) >= 0)
        assert samples[0] == 0.0
        assert samples[-1] == pytest.approx(12.0)


class TestLaplacian:
    """Tests for Δ on the torus."""

    def test_constants_in_kernel(self) -> None:
        t = LatticeTorus(2, 5)
        assert np.allclose(apply_lattice_laplacian(t, np.ones(t.vertex_count)), 0.0)

    def test_delta_column(self) -> None:
        t = LatticeTorus(2, 4)
        delta = np.zeros(t.vertex_count)
        delta[0] = 1.0
        column = apply_lattice_laplacian(t, delta)
        assert column[0] == 4.0
        assert sorted(np.flatnonzero(column == -1.0).tolist()) == sorted(t.neighbors(0))

    def test_shift_moves_mass(self) -> None:
        t = LatticeTorus(1, 5)
        v = np.array([1.0, 0.0, 0.0, 0.0, 0.0])
        assert apply_shift(t, v, 0).tolist() == [0.0, 1.0, 0.0, 0.0, 0.0]
        assert apply_shift(t, v, 0, adjoint=True).tolist() == [0.0, 0.0, 0.0, 0.0, 1.0]

    def test_shift_rejects_axis(self) -> None:
        with pytest.raises(ValueError, match="axis"):
            apply_shift(LatticeTorus(2, 4), np.zeros(16), 2)

    def test_rejects_wrong_length(self) -> None:
        with pytest.raises(ValueError, match="shape"):
            apply_lattice_laplacian(LatticeTorus(2, 4), np.zeros(8))

    def test_sum_of_axis_parts(self) -> None:
        t = LatticeTorus(3, 4)
        rng = np.random.default_rng(2)
        v = rng.standard_normal(t.vertex_count)
        by_axis = sum(apply_laplacian_axis(t, v, axis) for axis in range(3))
        assert np.allclose(by_axis, apply_lattice_laplacian(t, v), atol=1e-12)

    def test_symmetric_positive(self) -> None:
        t = LatticeTorus(2, 6)
        matrix = lattice_matrix(t)
        assert np.array_equal(matrix, matrix.T)
        assert np.linalg.eigvalsh(matrix).min() >= -1e-12


class TestSpectrum:
    """Tests for the Fourier diagonalisation."""

    @pytest.mark.parametrize(("dimension", "side"), [(1, 4), (1, 16), (2, 8), (3, 4)])
    def test_plane_waves(self, dimension: int, side: int) -> None:
        t = LatticeTorus(dimension, side)
        spectrum = dft_verify(t)
        assert spectrum.method == "plane-wave"
        assert spectrum.frequencies == t.vertex_count
        assert spectrum.max_residual < 1e-10
        assert 0.0 <= spectrum.eigen_min <= spectrum.eigen_max <= 4.0 * dimension

    def test_fft_for_large_torus(self) -> None:
        spectrum = dft_verify(LatticeTorus(2, 128), seed=7)
        assert spectrum.method == "fft"
        assert spectrum.max_residual < 1e-10
        assert spectrum.eigen_max == pytest.approx(8.0)

    @pytest.mark.parametrize(("dimension", "side"), [(1, 8), (2, 4), (2, 5), (3, 4)])
    def test_dense_eigenvalues_match_symbol(self, dimension: int, side: int) -> None:
        t = LatticeTorus(dimension, side)
        assert np.allclose(lattice_eigenvalues_dense(t), symbol_samples(t), atol=1e-10)

    def test_dense_limit(self) -> None:
        with pytest.raises(ValueError, match="dense"):
            lattice_matrix(LatticeTorus(2, 64))
