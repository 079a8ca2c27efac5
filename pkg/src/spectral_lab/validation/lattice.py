"""Verification suite for the torus Laplacian and its Fourier symbol."""

from __future__ import annotations

import logging
from itertools import product

import numpy as np

from ..core.config import VerifyConfig
from ..core.graph import LatticeTorus
from ..core.utils import make_rng
from ..spectral.lattice import (
    DENSE_LIMIT,
    apply_lattice_laplacian,
    apply_laplacian_axis,
    apply_shift,
    dft_verify,
    lattice_eigenvalues_dense,
    symbol_samples,
)
from .base import VerificationReport, check_bound, check_exact, check_residual

logger = logging.getLogger(__name__)

LATTICE_DIMENSIONS = (1, 2, 3)
LATTICE_SIDES = (4, 8, 16)
NEIGHBOR_SIDE = 4
FFT_TORUS = (2, 128)
RANDOM_VECTORS = 5

EIGEN_TOLERANCE = 1e-10
OPERATOR_TOLERANCE = 1e-12


def _check_neighbors(report: VerificationReport, d: int) -> None:
    t = LatticeTorus(d, NEIGHBOR_SIDE)
    bad = 0
    for idx in range(t.vertex_count):
        slots = t.neighbors(idx)
        delta = np.zeros(t.vertex_count)
        delta[idx] = 1.0
        column = apply_lattice_laplacian(t, delta)
        expected = np.zeros(t.vertex_count)
        expected[idx] = 2.0 * d
        np.subtract.at(expected, slots, 1.0)
        bad += int(len(set(slots)) != 2 * d or not np.array_equal(column, expected))
    report.add(
        check_exact(
            f"lattice.neighbor_structure[d={d},L={NEIGHBOR_SIDE}]",
            bad,
            0,
            details="2d distinct neighbors, Δδ_x = 2d δ_x - Σ_{y~x} δ_y",
        )
    )


def _check_spectrum(report: VerificationReport, t: LatticeTorus, seed: int) -> None:
    tag = f"d={t.dimension},L={t.side}"
    top = 4.0 * t.dimension
    spectrum = dft_verify(t, seed)
    report.add(
        check_residual(
            f"lattice.plane_wave_eigenvectors[{tag}]",
            spectrum.max_residual,
            EIGEN_TOLERANCE,
            details=f"{spectrum.frequencies} frequencies by {spectrum.method}",
        )
    )
    report.add(check_bound(f"lattice.symbol_min[{tag}]", spectrum.eigen_min, low=0.0, high=top))
    report.add(check_bound(f"lattice.symbol_max[{tag}]", spectrum.eigen_max, low=0.0, high=top))
    if t.vertex_count <= DENSE_LIMIT:
        dense = lattice_eigenvalues_dense(t)
        report.add(
            check_residual(
                f"lattice.dense_eigenvalues_match_symbol[{tag}]",
                float(np.max(np.abs(dense - symbol_samples(t)))),
                EIGEN_TOLERANCE,
            )
        )


def _check_operators(report: VerificationReport, t: LatticeTorus, seed: int) -> None:
    rng = make_rng(seed, 5, t.dimension, t.side)
    asym = negativity = unitarity = decomposition = 0.0
    for _ in range(RANDOM_VECTORS):
        u = rng.standard_normal(t.vertex_count)
        v = rng.standard_normal(t.vertex_count)
        lu, lv = apply_lattice_laplacian(t, u), apply_lattice_laplacian(t, v)
        asym = max(asym, abs(float(u @ lv - lu @ v)))
        negativity = max(negativity, -float(v @ lv))
        for axis in range(t.dimension):
            there_and_back = apply_shift(t, apply_shift(t, v, axis), axis, adjoint=True)
            back_and_there = apply_shift(t, apply_shift(t, v, axis, adjoint=True), axis)
            unitarity = max(
                unitarity,
                float(np.max(np.abs(there_and_back - v))),
                float(np.max(np.abs(back_and_there - v))),
            )
        by_axis = sum(apply_laplacian_axis(t, v, axis) for axis in range(t.dimension))
        decomposition = max(decomposition, float(np.max(np.abs(by_axis - lv))))
    tag = f"d={t.dimension},L={t.side}"
    report.add(check_residual(f"lattice.laplacian_symmetric[{tag}]", asym, 1e-9))
    report.add(check_residual(f"lattice.laplacian_positive[{tag}]", negativity, OPERATOR_TOLERANCE))
    report.add(check_residual(f"lattice.shift_unitary[{tag}]", unitarity, OPERATOR_TOLERANCE))
    report.add(
        check_residual(
            f"lattice.laplacian_from_shifts[{tag}]",
            decomposition,
            OPERATOR_TOLERANCE,
            details="Δ = Σ_k (2I - T_k - T_k*)",
        )
    )


def verify_lattice(config: VerifyConfig) -> VerificationReport:
    """Plane waves diagonalise the torus Laplacian with the symbol 4Σ sin²(x_k/2)."""
    report = VerificationReport(
        suite="lattice",
        parameters={"dimensions": list(LATTICE_DIMENSIONS), "sides": list(LATTICE_SIDES)},
        seed=config.seed,
    )
    if config.branchings:
        report.parameters["ignored_branchings"] = list(config.branchings)
    logger.info("lattice suite: d in %s, L in %s", LATTICE_DIMENSIONS, LATTICE_SIDES)
    for d in LATTICE_DIMENSIONS:
        _check_neighbors(report, d)
    for d, side in product(LATTICE_DIMENSIONS, LATTICE_SIDES):
        t = LatticeTorus(d, side)
        _check_spectrum(report, t, config.seed)
        _check_operators(report, t, config.seed)
    _check_spectrum(report, LatticeTorus(*FFT_TORUS), config.seed)
    logger.info("lattice checks done")
    return report
