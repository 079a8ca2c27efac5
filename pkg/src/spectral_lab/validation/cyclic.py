"""Verification suite for the cyclic decomposition and truncated spectral measures."""

from __future__ import annotations

import logging
import math

import numpy as np

from ..core.config import VerifyConfig
from ..core.graph import TruncatedTree
from ..core.operators import jacobi_D, jacobi_D_omega, jacobi_moment
from ..spectral.cyclic import (
    kolmogorov_distance,
    level_rank,
    max_weight_decay,
    orthobasis_with_s0,
    truncated_spectral_measure,
    verify_block_structure,
)
from ..spectral.measures import perturbed_measure, spectrum_interval
from .base import (
    VerificationReport,
    check_bound,
    check_exact,
    check_flag,
    check_residual,
    check_skipped,
)

logger = logging.getLogger(__name__)

CYCLIC_BRANCHINGS = (2, 3)
BLOCK_DEPTH = 8
BLOCK_MAX_LEVEL = 5
COMPLETENESS_BRANCHINGS = (1, 2, 3)
COMPLETENESS_MAX_LENGTH = 5
SPECTRUM_BRANCHINGS = (1, 2, 3, 4)
SPECTRUM_SIZE = 200
SPECTRUM_SLACK = 0.05
KOLMOGOROV_BRANCHINGS = (1, 2, 4)
KOLMOGOROV_LIMIT = 0.02
DECAY_SIZES = (25, 50, 100, 200)
MOMENT_MAX_ORDER = 16
TRUNCATION_SIZE = 10

GRAM_TOLERANCE = 1e-14
BLOCK_TOLERANCE = 1e-12
MOMENT_RTOL = 1e-9


def _image_moment(branching: int, n: int, nodes: int) -> float:
    """``∫ (N+1-2√N x)ⁿ dμ_{c+p}`` by quadrature."""
    root = math.sqrt(branching)
    measure = perturbed_measure(branching, nodes)
    return float(measure.integrate(lambda x: (branching + 1.0 - 2.0 * root * x) ** n))


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def verify_cyclic(config: VerifyConfig) -> VerificationReport:
    """Block structure, completeness and truncated spectral measures of D_Ω."""
    branchings = config.branchings_or(CYCLIC_BRANCHINGS)
    report = VerificationReport(
        suite="cyclic",
        parameters={
            "branchings": list(branchings),
            "depth": BLOCK_DEPTH,
            "max_level": BLOCK_MAX_LEVEL,
            "truncation": SPECTRUM_SIZE,
        },
        seed=config.seed,
    )
    logger.info("cyclic suite: N in %s", branchings)

    for n in sorted(set(branchings) | {1, 4}):
        basis = orthobasis_with_s0(n)
        gram_error = float(np.max(np.abs(basis @ basis.T - np.eye(n))))
        report.add(check_residual(f"cyclic.orthobasis_gram[N={n}]", gram_error, GRAM_TOLERANCE))
        report.add(
            check_residual(
                f"cyclic.orthobasis_first_is_s0[N={n}]",
                float(np.max(np.abs(basis[0] - 1.0 / math.sqrt(n)))),
                GRAM_TOLERANCE,
            )
        )

    for n in branchings:
        if n < 2:
            report.add(
                check_skipped(
                    f"cyclic.block_entries[N={n},D={BLOCK_DEPTH}]",
                    "N = 1 has only the D_Ω block",
                )
            )
            continue
        block = verify_block_structure(TruncatedTree(n, BLOCK_DEPTH), BLOCK_MAX_LEVEL)
        tag = f"N={n},D={BLOCK_DEPTH},levels<={BLOCK_MAX_LEVEL}"
        report.add(
            check_residual(
                f"cyclic.block_entries[{tag}]",
                block.max_deviation,
                BLOCK_TOLERANCE,
                details=f"{block.vectors} basis vectors",
            )
        )
        report.add(
            check_residual(
                f"cyclic.cross_block_zero[{tag}]", block.cross_deviation, BLOCK_TOLERANCE
            )
        )
        report.add(
            check_residual(f"cyclic.orthonormality[{tag}]", block.orthonormality, BLOCK_TOLERANCE)
        )
    logger.info("block structure done")

    for n in COMPLETENESS_BRANCHINGS:
        tree = TruncatedTree(n, COMPLETENESS_MAX_LENGTH)
        for m in range(COMPLETENESS_MAX_LENGTH + 1):
            rank, count = level_rank(tree, m)
            report.add(check_exact(f"cyclic.completeness_rank[N={n},m={m}]", rank, n**m))
            report.add(check_exact(f"cyclic.completeness_count[N={n},m={m}]", count, n**m))

    for n in SPECTRUM_BRANCHINGS:
        worst = max(
            _relative(
                jacobi_moment(jacobi_D_omega(n, k // 2 + 1), k),
                _image_moment(n, k, config.quadrature_nodes),
            )
            for k in range(MOMENT_MAX_ORDER + 1)
        )
        report.add(
            check_residual(
                f"cyclic.jacobi_moment_vs_quadrature[N={n},n<={MOMENT_MAX_ORDER}]",
                worst,
                MOMENT_RTOL,
            )
        )

        discrete = truncated_spectral_measure(n, TRUNCATION_SIZE)
        worst = max(
            _relative(discrete.moment(k), _image_moment(n, k, config.quadrature_nodes))
            for k in range(2 * (TRUNCATION_SIZE - 1) + 1)
        )
        report.add(
            check_residual(
                f"cyclic.truncated_measure_moments[N={n},M={TRUNCATION_SIZE}]",
                worst,
                MOMENT_RTOL,
            )
        )
        report.add(
            check_residual(
                f"cyclic.truncated_measure_mass[N={n},M={TRUNCATION_SIZE}]",
                abs(discrete.total_mass - 1.0),
                BLOCK_TOLERANCE,
            )
        )

        lo, hi = spectrum_interval(n)
        for matrix in (jacobi_D_omega(n, SPECTRUM_SIZE), jacobi_D(n, SPECTRUM_SIZE)):
            eigenvalues, _ = matrix.eigh()
            name = "d_omega" if matrix.label == "D_omega" else "d"
            report.add(
                check_bound(
                    f"cyclic.spectrum_min[{name},N={n},M={SPECTRUM_SIZE}]",
                    float(eigenvalues.min()),
                    low=lo - SPECTRUM_SLACK,
                )
            )
            report.add(
                check_bound(
                    f"cyclic.spectrum_max[{name},N={n},M={SPECTRUM_SIZE}]",
                    float(eigenvalues.max()),
                    high=hi + SPECTRUM_SLACK,
                )
            )
    logger.info("moments and spectra done")

    for n in KOLMOGOROV_BRANCHINGS:
        distance = kolmogorov_distance(
            truncated_spectral_measure(n, SPECTRUM_SIZE), n, config.quadrature_nodes
        )
        report.add(
            check_bound(
                f"cyclic.kolmogorov_distance[N={n},M={SPECTRUM_SIZE}]",
                distance,
                high=KOLMOGOROV_LIMIT,
            )
        )
        decay = max_weight_decay(n, DECAY_SIZES)
        weights = [w for _, w in decay]
        report.add(
            check_flag(
                f"cyclic.max_weight_decay[N={n}]",
                all(b < a for a, b in zip(weights, weights[1:])),
                expected="strictly decreasing in M",
                actual=", ".join(f"M={m}: {w:.3e}" for m, w in decay),
            )
        )
    return report
