"""Verification suite for μ_c, μ_{c+p}, their Borel transforms and the resolvent of A_Δ."""

from __future__ import annotations

import logging
import math

import numpy as np

from ..core.config import VerifyConfig
from ..core.utils import make_rng
from ..spectral.measures import (
    INT64_EXACT_MAX_N,
    aronszajn_krein,
    borel_mu_c,
    borel_transform_quadrature,
    boundary_density,
    catalan,
    catalan_gf,
    catalan_gf_series,
    catalan_table,
    i_lambda,
    mu_c_moment,
    mu_c_moment_series,
    mu_cp_density,
    perturbation_alpha,
    perturbed_measure,
    resolvent_A_delta,
    resolvent_residual,
    scaled_moment,
    scaled_moment_quadrature,
    semicircle_measure,
    spectrum_interval,
)
from .base import (
    VerificationReport,
    check_bound,
    check_exact,
    check_flag,
    check_residual,
)

logger = logging.getLogger(__name__)

MEASURE_BRANCHINGS = (1, 2, 3, 4)
BOUNDARY_BRANCHINGS = (1, 2, 4)
CATALAN_TABLE_SIZE = 60
CATALAN_30 = 3814986502092304
SMALL_RULE_NODES = 16
SCALED_RADII = (0.5, 1.0, 2.0, 2.0 * math.sqrt(2.0))
SCALED_ORDERS = 8
HERGLOTZ_POINTS = 100
SERIES_POINTS = (1.5, -1.5, 1.5j, 2.0 + 1.0j, -1.2 - 0.9j, 3.0, 10.0j)
QUADRATURE_POINTS = (10.0j, 2.0, -2.0, 1.5 + 0.5j, 0.3 + 1.0j, -0.7 + 0.2j)
SYMMETRY_POINTS = (0.5j, 1.5, 0.3 + 0.1j, -2.0 + 3.0j, 5.0 - 0.01j)
BOUNDARY_LIMIT = 0.99
BOUNDARY_GRID = 199
RESOLVENT_CASES = ((1, 3.0), (2, 2.0 * math.sqrt(2.0) + 1e-3), (4, 4.0 + 1e-3), (3, -5.0))

EXACT_TOLERANCE = 1e-12
MASS_TOLERANCE = 1e-10
QUADRATURE_TOLERANCE = 1e-10
PERTURBED_TOLERANCE = 1e-8
BOUNDARY_TOLERANCE = 1e-4
HALVING_EPS = 1e-3
HALVING_RATIO_LIMIT = 0.75
RESOLVENT_TOLERANCE = 1e-10


def _check_catalan(report: VerificationReport) -> None:
    table = catalan_table(CATALAN_TABLE_SIZE)
    report.add(
        check_flag(
            f"measures.catalan_recursion_matches_closed_form[n<={CATALAN_TABLE_SIZE}]",
            table.closed_form_agrees(),
            expected="C_{n+1} = Σ C_k C_{n-k} equals binomial(2n,n)/(n+1)",
            actual="agree" if table.closed_form_agrees() else "disagree",
        )
    )
    report.add(check_exact("measures.catalan_30", catalan(30), CATALAN_30))
    fits = math.comb(2 * INT64_EXACT_MAX_N, INT64_EXACT_MAX_N) < 2**63
    overflows = math.comb(2 * (INT64_EXACT_MAX_N + 1), INT64_EXACT_MAX_N + 1) >= 2**63
    report.add(
        check_flag(
            f"measures.catalan_int64_boundary[n={INT64_EXACT_MAX_N}]",
            fits and overflows,
            expected=f"binomial(2n, n) fits int64 up to n={INT64_EXACT_MAX_N} only",
            actual=f"fits={fits} next_overflows={overflows}",
        )
    )
    report.add(
        check_residual(
            "measures.catalan_gf_series[x=0.1]",
            abs(catalan_gf_series(0.1) - catalan_gf(0.1)),
            EXACT_TOLERANCE,
        )
    )
    grid = np.linspace(-1.0, 0.25, 51)
    functional = max(abs(catalan_gf(x) - 1.0 - x * catalan_gf(x) ** 2) for x in grid)
    report.add(
        check_residual("measures.catalan_gf_functional_equation", functional, EXACT_TOLERANCE)
    )


def _relative_gap(value: float, target: float) -> float:
    return abs(value - target) / max(1.0, abs(target))


def _check_quadrature(report: VerificationReport, nodes: int) -> None:
    for k in (SMALL_RULE_NODES, nodes):
        measure = semicircle_measure(k)
        worst = max(
            abs(measure.moment(n) - float(mu_c_moment(n))) for n in range(2 * k)
        )
        report.add(
            check_residual(
                f"measures.quadrature_exactness[K={k},n<={2 * k - 1}]", worst, EXACT_TOLERANCE
            )
        )
    report.add(
        check_residual(
            "measures.total_mass[c]",
            abs(semicircle_measure(nodes).total_mass - 1.0),
            MASS_TOLERANCE,
        )
    )
    for n in MEASURE_BRANCHINGS:
        measure = perturbed_measure(n, nodes)
        report.add(
            check_residual(
                f"measures.total_mass[c+p,N={n}]", abs(measure.total_mass - 1.0), MASS_TOLERANCE
            )
        )
        report.add(
            check_residual(
                f"measures.moment_bridge[N={n}]",
                abs(measure.moment(2) - (n + 1) / (4.0 * n)),
                MASS_TOLERANCE,
                details="∫ x² dμ_{c+p} = (N+1)/(4N)",
            )
        )
    worst = max(
        _relative_gap(scaled_moment_quadrature(r, k, nodes), scaled_moment(r, k))
        for r in SCALED_RADII
        for k in range(SCALED_ORDERS + 1)
    )
    report.add(check_residual("measures.scaled_semicircle_moments", worst, EXACT_TOLERANCE))


def _check_transforms(report: VerificationReport, seed: int, nodes: int) -> None:
    rng = make_rng(seed, 2)
    points = rng.uniform(-3.0, 3.0, HERGLOTZ_POINTS) + 1j * rng.uniform(1e-3, 2.0, HERGLOTZ_POINTS)
    f_values = np.asarray(borel_mu_c(points))
    report.add(
        check_flag(
            f"measures.herglotz[c,{HERGLOTZ_POINTS} points]",
            bool(np.all(f_values.imag > 0)),
            expected="Im F(z) > 0 for Im z > 0",
            actual=f"min Im F = {float(f_values.imag.min()):.3e}",
        )
    )
    for n in MEASURE_BRANCHINGS:
        alpha = perturbation_alpha(n)
        lowest = min(aronszajn_krein(complex(z), alpha).imag for z in points)
        report.add(
            check_flag(
                f"measures.herglotz[c+p,N={n},{HERGLOTZ_POINTS} points]",
                lowest > 0,
                expected="Im F_α(z) > 0 for Im z > 0",
                actual=f"min Im F_α = {lowest:.3e}",
            )
        )

    odd = max(abs(complex(borel_mu_c(-z)) + complex(borel_mu_c(z))) for z in SYMMETRY_POINTS)
    report.add(check_residual("measures.borel_odd_symmetry", odd, EXACT_TOLERANCE))

    series = max(
        abs(mu_c_moment_series(z) - complex(borel_mu_c(z))) / abs(complex(borel_mu_c(z)))
        for z in SERIES_POINTS
    )
    report.add(
        check_residual("measures.borel_series_vs_closed_form[|z|>=1.5]", series, EXACT_TOLERANCE)
    )
    semicircle = semicircle_measure(nodes)
    by_quadrature = max(
        abs(borel_transform_quadrature(semicircle, z) - complex(borel_mu_c(z)))
        for z in QUADRATURE_POINTS
    )
    report.add(
        check_residual("measures.borel_quadrature[c]", by_quadrature, QUADRATURE_TOLERANCE)
    )
    for n in MEASURE_BRANCHINGS:
        measure = perturbed_measure(n, nodes)
        alpha = perturbation_alpha(n)
        worst = max(
            abs(borel_transform_quadrature(measure, z) - aronszajn_krein(z, alpha))
            for z in QUADRATURE_POINTS
        )
        report.add(
            check_residual(
                f"measures.aronszajn_krein_vs_quadrature[N={n}]",
                worst,
                PERTURBED_TOLERANCE,
            )
        )


def _check_boundary(report: VerificationReport) -> None:
    grid = np.linspace(-BOUNDARY_LIMIT, BOUNDARY_LIMIT, BOUNDARY_GRID)
    for n in BOUNDARY_BRANCHINGS:
        alpha = perturbation_alpha(n)
        exact = mu_cp_density(grid, n)
        plain = np.array([boundary_density(float(x), alpha) for x in grid])
        extrapolated = np.array([boundary_density(float(x), alpha, richardson=True) for x in grid])
        plain_error = float(np.max(np.abs(plain - exact)))
        extrapolated_error = float(np.max(np.abs(extrapolated - exact)))
        report.add(
            check_residual(
                f"measures.boundary_density[N={n},eps=1e-6]",
                plain_error,
                BOUNDARY_TOLERANCE,
            )
        )
        report.add(
            check_residual(
                f"measures.boundary_density_richardson[N={n}]",
                extrapolated_error,
                BOUNDARY_TOLERANCE,
            )
        )
        coarse = np.array([boundary_density(float(x), alpha, HALVING_EPS) for x in grid])
        fine = np.array([boundary_density(float(x), alpha, HALVING_EPS / 2.0) for x in grid])
        coarse_error = float(np.max(np.abs(coarse - exact)))
        fine_error = float(np.max(np.abs(fine - exact)))
        report.add(
            check_bound(
                f"measures.boundary_density_halving[N={n},eps={HALVING_EPS:g}]",
                fine_error / coarse_error,
                high=HALVING_RATIO_LIMIT,
                details=f"error {coarse_error:.3e} at eps, {fine_error:.3e} at eps/2",
            )
        )
    unperturbed = np.array([boundary_density(float(x), 0.0) for x in grid])
    report.add(
        check_residual(
            "measures.boundary_density[alpha=0]",
            float(np.max(np.abs(unperturbed - semicircle_measure().density(grid)))),
            BOUNDARY_TOLERANCE,
        )
    )


def _check_resolvent(report: VerificationReport, nodes: int) -> None:
    for n in MEASURE_BRANCHINGS:
        edge = 2.0 * math.sqrt(n)
        at_edge = abs(i_lambda(edge, n, nodes) - 1.0 / math.sqrt(n))
        report.add(
            check_residual(
                f"measures.i_lambda_edge[N={n}]",
                at_edge,
                EXACT_TOLERANCE,
                details="I_{2√N} = 1/√N",
            )
        )
        lam = edge + 0.75
        closed = -complex(borel_mu_c(lam / edge)).real / edge
        report.add(
            check_residual(
                f"measures.i_lambda_vs_borel[N={n}]",
                abs(i_lambda(lam, n, nodes) - closed),
                EXACT_TOLERANCE,
            )
        )
        report.add(
            check_residual(
                f"measures.i_lambda_odd[N={n}]",
                abs(i_lambda(-lam, n, nodes) + i_lambda(lam, n, nodes)),
                EXACT_TOLERANCE,
            )
        )
        try:
            resolvent_A_delta(0.5 * edge, np.ones_like, n, nodes)
            rejected = False
        except ValueError:
            rejected = True
        report.add(
            check_flag(
                f"measures.resolvent_rejects_spectrum[N={n}]",
                rejected,
                expected="ValueError for |λ| <= 2√N",
                actual="rejected" if rejected else "accepted",
            )
        )
        lo, hi = spectrum_interval(n)
        report.add(
            check_residual(
                f"measures.spectrum_interval[N={n}]",
                max(abs(lo - (n + 1 - edge)), abs(hi - (n + 1 + edge))),
                EXACT_TOLERANCE,
            )
        )

    def g(x: np.ndarray) -> np.ndarray:
        return 1.0 + np.asarray(x) ** 2

    for n, lam in RESOLVENT_CASES:
        f = resolvent_A_delta(lam, g, n, nodes)
        report.add(
            check_residual(
                f"measures.resolvent_residual[N={n},lambda={lam:.6g}]",
                resolvent_residual(lam, g, f, n, nodes),
                RESOLVENT_TOLERANCE,
            )
        )


def verify_measures(config: VerifyConfig) -> VerificationReport:
    """Catalan numbers, quadrature, Borel transforms, boundary densities and the resolvent."""
    report = VerificationReport(
        suite="measures",
        parameters={
            "quadrature_nodes": config.quadrature_nodes,
            "branchings": list(MEASURE_BRANCHINGS),
            "herglotz_points": HERGLOTZ_POINTS,
        },
        seed=config.seed,
    )
    if config.branchings:
        report.parameters["ignored_branchings"] = list(config.branchings)
    logger.info("measures suite: K=%d", config.quadrature_nodes)
    _check_catalan(report)
    _check_quadrature(report, config.quadrature_nodes)
    logger.info("catalan and quadrature done")
    _check_transforms(report, config.seed, config.quadrature_nodes)
    _check_boundary(report)
    logger.info("transforms done")
    _check_resolvent(report, config.quadrature_nodes)
    logger.info("resolvent done")
    return report
