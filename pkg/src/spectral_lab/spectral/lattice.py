"""The lattice Laplacian on the periodic torus ``(Z/LZ)^d``.

``(Δv)(n) = Σ_{m~n} (v(n) - v(m)) = Σ_k (2I - T_k - T_k*) v`` with ``T_k`` the
bilateral shift along axis k. Plane waves ``e^{2πi m·n/L}`` diagonalise it with
eigenvalue ``4 Σ_k sin²(π m_k / L)``, samples of the symbol
``4 Σ_k sin²(x_k / 2)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.graph import LatticeTorus

logger = logging.getLogger(__name__)

DENSE_LIMIT = 1024
PLANE_WAVE_LIMIT = 4096
PLANE_WAVE_BATCH = 256
FFT_PROBES = 4


def _as_lattice_vector(t: LatticeTorus, v: ArrayLike) -> NDArray:
    arr = np.asarray(v)
    if arr.shape != (t.vertex_count,):
        raise ValueError(f"lattice vector has shape {arr.shape}, expected ({t.vertex_count},)")
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64, copy=False)
    return arr


def apply_shift(t: LatticeTorus, v: ArrayLike, axis: int, *, adjoint: bool = False) -> NDArray:
    """``(T_k v)(n) = v(n - e_k)``; the adjoint shifts the other way."""
    if not 0 <= axis < t.dimension:
        raise ValueError(f"axis {axis} outside 0..{t.dimension - 1}")
    grid = _as_lattice_vector(t, v).reshape(t.shape)
    return np.roll(grid, -1 if adjoint else 1, axis=axis).reshape(-1)


def apply_lattice_laplacian(t: LatticeTorus, v: ArrayLike) -> NDArray:
    """``Σ_{m~n} (v(n) - v(m))`` with periodic neighbors."""
    grid = _as_lattice_vector(t, v).reshape(t.shape)
    out = 2.0 * t.dimension * grid
    for axis in range(t.dimension):
        out = out - np.roll(grid, 1, axis=axis) - np.roll(grid, -1, axis=axis)
    return out.reshape(-1)


def apply_laplacian_axis(t: LatticeTorus, v: ArrayLike, axis: int) -> NDArray:
    """The one-axis part ``(2I - T_k - T_k*) v``."""
    v = _as_lattice_vector(t, v)
    return 2.0 * v - apply_shift(t, v, axis) - apply_shift(t, v, axis, adjoint=True)


def symbol(d: int, x: ArrayLike) -> NDArray[np.float64] | float:
    """``4 Σ_k sin²(x_k / 2)``; ``x`` has trailing dimension d."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (d,):
        raise ValueError(f"frequency has shape {x.shape}, expected trailing dimension {d}")
    value = 4.0 * np.sum(np.sin(x / 2.0) ** 2, axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def frequencies(t: LatticeTorus) -> NDArray[np.int64]:
    """Every ``m ∈ ℤ_L^d`` as rows, in C order."""
    grids = np.indices(t.shape).reshape(t.dimension, -1)
    return grids.T.astype(np.int64)


def symbol_samples(t: LatticeTorus) -> NDArray[np.float64]:
    """``symbol(2πm/L)`` for every frequency, ascending."""
    return np.sort(symbol(t.dimension, 2.0 * np.pi * frequencies(t) / t.side))


@dataclass(frozen=True)
class LatticeSpectrum:
    """Outcome of the Fourier diagonalisation check.

    Attributes:
        max_residual: Largest ``‖Δw - σ w‖_∞`` over the checked plane waves (or
            FFT probes).
        eigen_min: Smallest symbol sample.
        eigen_max: Largest symbol sample.
        frequencies: Number of frequencies covered.
        method: ``"plane-wave"`` or ``"fft"``.
    """

    max_residual: float
    eigen_min: float
    eigen_max: float
    frequencies: int
    method: str


def _plane_wave_residual(t: LatticeTorus) -> float:
    points = frequencies(t)
    worst = 0.0
    for start in range(0, len(points), PLANE_WAVE_BATCH):
        batch = points[start : start + PLANE_WAVE_BATCH]
        phase = 2.0 * np.pi * (batch @ points.T) / t.side
        waves = np.exp(1j * phase)
        sigma = symbol(t.dimension, 2.0 * np.pi * batch / t.side)
        for wave, s in zip(waves, np.atleast_1d(sigma)):
            worst = max(worst, float(np.max(np.abs(apply_lattice_laplacian(t, wave) - s * wave))))
    return worst


def _fft_residual(t: LatticeTorus, seed: int) -> float:
    """Check ``F(Δv) = σ · F(v)`` on random probes."""
    rng = np.random.default_rng(seed)
    sigma = symbol(t.dimension, 2.0 * np.pi * frequencies(t) / t.side).reshape(t.shape)
    worst = 0.0
    for _ in range(FFT_PROBES):
        v = rng.standard_normal(t.vertex_count)
        lhs = np.fft.fftn(apply_lattice_laplacian(t, v).reshape(t.shape))
        rhs = sigma * np.fft.fftn(v.reshape(t.shape))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / t.vertex_count)
    return worst


def dft_verify(t: LatticeTorus, seed: int = 0) -> LatticeSpectrum:
    """Every plane wave is an eigenvector with eigenvalue ``symbol(2πm/L)``.

    Tori larger than ``PLANE_WAVE_LIMIT`` vertices are checked through the FFT
    instead, on random probe vectors.
    """
    samples = symbol_samples(t)
    if t.vertex_count <= PLANE_WAVE_LIMIT:
        residual, method = _plane_wave_residual(t), "plane-wave"
    else:
        residual, method = _fft_residual(t, seed), "fft"
    logger.debug("lattice d=%d L=%d %s residual %.3g", t.dimension, t.side, method, residual)
    return LatticeSpectrum(
        max_residual=residual,
        eigen_min=float(samples[0]),
        eigen_max=float(samples[-1]),
        frequencies=int(samples.size),
        method=method,
    )


def lattice_matrix(t: LatticeTorus) -> NDArray[np.float64]:
    """Dense matrix of the Laplacian, column by column."""
    if t.vertex_count > DENSE_LIMIT:
        raise ValueError(f"dense assembly limited to {DENSE_LIMIT} vertices, got {t.vertex_count}")
    eye = np.eye(t.vertex_count)
    return np.column_stack([apply_lattice_laplacian(t, eye[:, k]) for k in range(t.vertex_count)])


def lattice_eigenvalues_dense(t: LatticeTorus) -> NDArray[np.float64]:
    """Ascending eigenvalues by full diagonalisation."""
    return np.linalg.eigvalsh(lattice_matrix(t))
