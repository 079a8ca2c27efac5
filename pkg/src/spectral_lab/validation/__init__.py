"""Verification suites: every invariant becomes a named check in a report.

Architecture (one suite per subject):
- base.py: Generic check/report framework and check factories
- operators.py: Tree combinatorics, Laplacian, shift identities
- cyclic.py: Cyclic block structure, completeness, truncated spectral measures
- measures.py: Catalan numbers, quadrature, Borel transforms, resolvent
- resistance.py: Potentials, Kirchhoff currents, resistance metric
- walks.py: Closed-walk counts, moment identities, Monte Carlo
- eigen.py: Half-line eigenvectors and their polynomials
- lattice.py: Torus Laplacian and its Fourier symbol
"""

from __future__ import annotations

import logging
from collections.abc import Callable

from ..core.config import VerifyConfig
from .base import (
    VerificationCheck,
    VerificationReport,
    check_bound,
    check_exact,
    check_flag,
    check_residual,
    check_skipped,
)
from .cyclic import verify_cyclic
from .eigen import verify_eigen
from .lattice import verify_lattice
from .measures import verify_measures
from .operators import verify_operators
from .resistance import verify_resistance
from .walks import verify_walks

logger = logging.getLogger(__name__)

SUITES: dict[str, Callable[[VerifyConfig], VerificationReport]] = {
    "operators": verify_operators,
    "cyclic": verify_cyclic,
    "measures": verify_measures,
    "resistance": verify_resistance,
    "walks": verify_walks,
    "eigen": verify_eigen,
    "lattice": verify_lattice,
}
ALL_SUITES = "all"


def run_suite(name: str, config: VerifyConfig | None = None) -> VerificationReport:
    """
    Run one suite by name, or every suite in order for ``"all"``.

    Args:
        name: A key of `SUITES` or ``"all"``.
        config: Shared parameters; defaults to `VerifyConfig.from_env()`.

    Returns:
        The suite's report, stamped with the package version.

    Raises:
        ValueError: If the suite name is unknown.
    """
    from .. import __version__

    config = config or VerifyConfig.from_env()
    if name == ALL_SUITES:
        report = VerificationReport(suite=ALL_SUITES, seed=config.seed)
        for suite_name, suite in SUITES.items():
            part = suite(config)
            report.parameters[suite_name] = part.parameters
            report.extend(part)
            logger.info(
                "%s: %d passed, %d failed, %d skipped",
                suite_name,
                part.passed_count,
                part.failed_count,
                part.skipped_count,
            )
    elif name in SUITES:
        report = SUITES[name](config)
    else:
        choices = ", ".join([*SUITES, ALL_SUITES])
        raise ValueError(f"unknown suite {name!r}; choose one of {choices}")
    report.version = __version__
    return report


__all__ = [
    "ALL_SUITES",
    "SUITES",
    "VerificationCheck",
    "VerificationReport",
    "check_bound",
    "check_exact",
    "check_flag",
    "check_residual",
    "check_skipped",
    "run_suite",
    "verify_cyclic",
    "verify_eigen",
    "verify_lattice",
    "verify_measures",
    "verify_operators",
    "verify_resistance",
    "verify_walks",
]
