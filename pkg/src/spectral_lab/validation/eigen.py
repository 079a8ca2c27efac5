"""Verification suite for the bounded half-line eigenvectors and their polynomials."""

from __future__ import annotations

import logging

import numpy as np

from ..core.config import VerifyConfig
from ..spectral.periodic import (
    EigenSequence,
    char_poly,
    char_poly_roots,
    char_poly_roots_closed_form,
    consecutive_resultant,
    detect_period,
    eigen_residual,
    eigvec_generate,
    energy_partial_sums,
    golden_eigenvalues,
)
from .base import VerificationReport, check_bound, check_exact, check_flag, check_residual

logger = logging.getLogger(__name__)

SEQUENCE_LENGTH = 200
EXPECTED_COEFFICIENTS = {
    1: (1, -1),
    2: (1, -3, 1),
    3: (1, -6, 5, -1),
}
ROOT_MAX_DEGREE = 5
COMPANION_MAX_DEGREE = 8
POLYNOMIAL_MAX_DEGREE = 6
RESULTANT_MAX_DEGREE = 6
SAMPLE_EIGENVALUES = 41
BOUNDED_LIMIT = 10.0
ENERGY_GROWTH_RATIO = 1.5

RESIDUAL_TOLERANCE = 1e-9
ROOT_RESIDUAL_TOLERANCE = 1e-8
EXACT_TOLERANCE = 1e-12
POLYNOMIAL_TOLERANCE = 1e-10


def _named_eigenvalues() -> list[tuple[str, float, int]]:
    plus, minus = golden_eigenvalues()
    return [("0", 0.0, 1), ("1", 1.0, 6), ("golden-", minus, 10), ("golden+", plus, 10)]


def _check_polynomials(report: VerificationReport) -> None:
    for n, expected in EXPECTED_COEFFICIENTS.items():
        name = f"eigen.char_poly_coefficients[n={n}]"
        report.add(check_exact(name, char_poly(n).coefficients, expected))

    plus, minus = golden_eigenvalues()
    p2 = char_poly(2)
    report.add(
        check_residual(
            "eigen.golden_roots_of_p2",
            max(abs(p2(plus)), abs(p2(minus)), abs(plus + minus - 3.0), abs(plus * minus - 1.0)),
            EXACT_TOLERANCE,
            details="(3 ± √5)/2 solve λ² - 3λ + 1 = 0",
        )
    )

    worst = max(
        float(np.max(np.abs(char_poly_roots(n) - char_poly_roots_closed_form(n))))
        for n in range(1, COMPANION_MAX_DEGREE + 1)
    )
    report.add(
        check_residual(
            f"eigen.companion_roots_match_closed_form[n<={COMPANION_MAX_DEGREE}]",
            worst,
            ROOT_RESIDUAL_TOLERANCE,
        )
    )

    grid = np.linspace(0.0, 4.0, SAMPLE_EIGENVALUES)
    worst = 0.0
    for lam in grid:
        seq = eigvec_generate(float(lam), SEQUENCE_LENGTH)
        for n in range(1, POLYNOMIAL_MAX_DEGREE + 1):
            worst = max(worst, abs(seq.values[n] - float(char_poly(n)(lam))))
    report.add(
        check_residual(
            f"eigen.sequence_is_char_poly[n<={POLYNOMIAL_MAX_DEGREE}]",
            worst,
            POLYNOMIAL_TOLERANCE,
            details="v_n(λ) = p_n(λ)",
        )
    )

    smallest = min(abs(consecutive_resultant(n)) for n in range(1, RESULTANT_MAX_DEGREE + 1))
    report.add(
        check_bound(
            f"eigen.consecutive_roots_disjoint[n<={RESULTANT_MAX_DEGREE}]",
            smallest,
            low=0.5,
            details="|res(p_n, p_{n+1})| >= 1 for integer polynomials without common roots",
        )
    )


def _check_sequences(report: VerificationReport) -> None:
    for name, lam, period in _named_eigenvalues():
        seq = eigvec_generate(lam, SEQUENCE_LENGTH)
        report.add(
            check_residual(
                f"eigen.residual[lambda={name},L={SEQUENCE_LENGTH}]",
                eigen_residual(seq),
                RESIDUAL_TOLERANCE,
            )
        )
        report.add(check_exact(f"eigen.period[lambda={name}]", detect_period(seq), period))
        _check_energy_growth(report, name, seq)

    for n in range(1, ROOT_MAX_DEGREE + 1):
        for k, lam in enumerate(char_poly_roots(n), start=1):
            seq = eigvec_generate(float(lam), SEQUENCE_LENGTH)
            tag = f"n={n},root={k}"
            report.add(
                check_residual(
                    f"eigen.root_residual[{tag}]", eigen_residual(seq), ROOT_RESIDUAL_TOLERANCE
                )
            )
            report.add(
                check_bound(
                    f"eigen.root_bounded[{tag}]",
                    float(np.max(np.abs(seq.values))),
                    high=BOUNDED_LIMIT,
                )
            )


def _check_energy_growth(report: VerificationReport, name: str, seq: EigenSequence) -> None:
    sums = energy_partial_sums(seq)
    half = sums[SEQUENCE_LENGTH // 2]
    ratio = float(sums[-1] / half) if half > 0 else float("inf")
    report.add(
        check_flag(
            f"eigen.infinite_energy[lambda={name}]",
            bool(np.all(np.diff(sums) >= 0)) and ratio >= ENERGY_GROWTH_RATIO,
            expected=f"partial energies nondecreasing, S(L)/S(L/2) >= {ENERGY_GROWTH_RATIO}",
            actual=f"S(L)/S(L/2) = {ratio:.4f}",
        )
    )


def verify_eigen(config: VerifyConfig) -> VerificationReport:
    """Characteristic polynomials, periods and boundedness of the N = 1 eigenvectors."""
    report = VerificationReport(
        suite="eigen",
        parameters={"length": SEQUENCE_LENGTH, "root_max_degree": ROOT_MAX_DEGREE},
        seed=config.seed,
    )
    if config.branchings:
        report.parameters["ignored_branchings"] = list(config.branchings)
    logger.info("eigen suite: L=%d", SEQUENCE_LENGTH)
    _check_polynomials(report)
    _check_sequences(report)
    logger.info("eigen checks done")
    return report
