"""Verification suite for potentials, the energy form and the resistance metric."""

from __future__ import annotations

import logging
from itertools import combinations, product

import numpy as np

from ..core.config import VerifyConfig
from ..core.graph import TruncatedTree, all_words
from ..core.utils import make_rng
from ..spectral.resistance import (
    covariance,
    covariance_matrix,
    effective_resistance,
    energy,
    energy_laplacian_pairing,
    independent_increments_check,
    kirchhoff_residual,
    neg_semidefinite_check,
    potential,
    potential_uniqueness_spread,
    potential_vector,
    resistance_dist,
    resistance_dist_four_potential,
)
from .base import VerificationReport, check_bound, check_flag, check_residual

logger = logging.getLogger(__name__)

RESISTANCE_BRANCHINGS = (1, 2, 3)
POTENTIAL_MAX_LENGTH = 6
FOUR_POTENTIAL_DEPTH = 6
METRIC_DEPTH = 4
TRIANGLE_DEPTH = 3
COVARIANCE_BRANCHING = 2
COVARIANCE_DEPTH = 4
ENERGY_DEPTH = 4
RANDOM_VECTORS = 20
QUADRATIC_FORM_SAMPLES = 1000
UNIQUENESS_TARGET = (1, 2)
UNIQUENESS_DEPTH = 8
NETWORKX_PAIRS = 12
SMALL_TREE_MAX_BRANCHING = 3

EXACT_TOLERANCE = 1e-12
QUADRATIC_FORM_TOLERANCE = 1e-10
UNIQUENESS_TOLERANCE = 1e-6


def _check_potentials(report: VerificationReport, n: int) -> None:
    tree = TruncatedTree(n, POTENTIAL_MAX_LENGTH + 1)
    laplace = 0.0
    kirchhoff = 0.0
    targets = 0
    for idx in range(1, tree.vertex_count):
        if tree.depths[idx] > POTENTIAL_MAX_LENGTH:
            break
        pot = potential(tree.word(idx), tree)
        laplace = max(laplace, pot.interior_residual())
        kirchhoff = max(kirchhoff, kirchhoff_residual(pot))
        targets += 1
    tag = f"N={n},|η|<={POTENTIAL_MAX_LENGTH}"
    report.add(
        check_residual(
            f"resistance.potential_solves_laplace[{tag}]",
            laplace,
            EXACT_TOLERANCE,
            details=f"{targets} targets, Δv_η = δ_∅ - δ_η",
        )
    )
    report.add(check_residual(f"resistance.kirchhoff_currents[{tag}]", kirchhoff, EXACT_TOLERANCE))


def _check_metric(report: VerificationReport, n: int) -> None:
    depth = FOUR_POTENTIAL_DEPTH if n <= SMALL_TREE_MAX_BRANCHING else METRIC_DEPTH
    words = list(all_words(n, depth))
    worst = max(
        abs(resistance_dist_four_potential(x, y) - resistance_dist(x, y))
        for x, y in product(words, repeat=2)
    )
    report.add(
        check_residual(
            f"resistance.four_potential_formula[N={n},depth<={depth}]",
            worst,
            EXACT_TOLERANCE,
            details="dist(x, y) = √(2 l(x, y))",
        )
    )

    triangle_words = list(all_words(n, TRIANGLE_DEPTH))
    excess = max(
        resistance_dist(x, z) - resistance_dist(x, y) - resistance_dist(y, z)
        for x, y, z in product(triangle_words, repeat=3)
    )
    report.add(
        check_bound(
            f"resistance.triangle_inequality[N={n},depth<={TRIANGLE_DEPTH}]",
            excess,
            high=EXACT_TOLERANCE,
        )
    )


def _check_networkx(report: VerificationReport, n: int, seed: int) -> None:
    tree = TruncatedTree(n, METRIC_DEPTH)
    rng = make_rng(seed, 3, n)
    worst = 0.0
    for _ in range(NETWORKX_PAIRS):
        a, b = rng.integers(0, tree.vertex_count, size=2)
        x, y = tree.word(int(a)), tree.word(int(b))
        worst = max(worst, abs(resistance_dist(x, y) ** 2 - 2.0 * effective_resistance(tree, x, y)))
    report.add(
        check_residual(
            f"resistance.networkx_effective_resistance[N={n}]",
            worst,
            1e-9,
            details="dist² = 2 R_eff",
        )
    )


def _check_covariance(report: VerificationReport, seed: int) -> None:
    n = COVARIANCE_BRANCHING
    words = [w for w in all_words(n, COVARIANCE_DEPTH) if w]
    gram = covariance_matrix(words)
    lowest = float(np.linalg.eigvalsh(gram).min())
    report.add(
        check_bound(
            f"resistance.covariance_psd[N={n},depth<={COVARIANCE_DEPTH}]",
            lowest,
            low=-EXACT_TOLERANCE,
        )
    )

    tree = TruncatedTree(n, ENERGY_DEPTH)
    inner = [w for w in all_words(n, ENERGY_DEPTH - 1) if w]
    vectors = {w: potential_vector(tree, w) for w in inner}
    worst = max(
        abs(covariance(x, y) - energy(vectors[x], vectors[y], tree))
        for x, y in product(inner, repeat=2)
    )
    report.add(check_residual("resistance.covariance_is_energy", worst, EXACT_TOLERANCE))

    rng = make_rng(seed, 3, 0)
    pairing = 0.0
    reproducing = 0.0
    for _ in range(RANDOM_VECTORS):
        u = rng.standard_normal(tree.vertex_count)
        pairing = max(pairing, abs(energy(u, u, tree) - energy_laplacian_pairing(u, tree)))
        for w in inner:
            lhs = energy(vectors[w], u, tree)
            rhs = 2.0 * (u[0] - u[tree.index(w)])
            reproducing = max(reproducing, abs(lhs - rhs))
    report.add(check_residual("resistance.energy_equals_laplacian_pairing", pairing, 1e-10))
    report.add(
        check_residual(
            "resistance.potential_reproduces_increments",
            reproducing,
            1e-10,
            details="ℰ(v_η, u) = 2(u(∅) - u(η))",
        )
    )


def _check_quadratic_form(report: VerificationReport, seed: int) -> None:
    words = list(all_words(COVARIANCE_BRANCHING, TRIANGLE_DEPTH))
    rng = make_rng(seed, 3, 1)
    highest = max(
        neg_semidefinite_check(words, rng.standard_normal(len(words)))
        for _ in range(QUADRATIC_FORM_SAMPLES)
    )
    report.add(
        check_bound(
            f"resistance.path_length_negative_semidefinite[{QUADRATIC_FORM_SAMPLES} samples]",
            highest,
            high=QUADRATIC_FORM_TOLERANCE,
        )
    )


def _check_increments(report: VerificationReport) -> None:
    words = list(all_words(COVARIANCE_BRANCHING, COVARIANCE_DEPTH))
    worst = 0.0
    triples = 0
    for z in words:
        prefixes = [z[:k] for k in range(len(z) + 1)]
        for x, y in combinations(prefixes, 2):
            worst = max(worst, abs(independent_increments_check(x, y, z)))
            triples += 1
    report.add(
        check_residual(
            "resistance.independent_increments",
            worst,
            EXACT_TOLERANCE,
            details=f"{triples} nested triples",
        )
    )
    try:
        independent_increments_check((1,), (2,), (2, 1))
        rejected = False
    except ValueError:
        rejected = True
    report.add(
        check_flag(
            "resistance.increments_reject_unnested",
            rejected,
            expected="ValueError",
            actual="rejected" if rejected else "accepted",
        )
    )


def verify_resistance(config: VerifyConfig) -> VerificationReport:
    """Potentials, Kirchhoff currents, the metric and the covariance kernel."""
    branchings = config.branchings_or(RESISTANCE_BRANCHINGS)
    report = VerificationReport(
        suite="resistance",
        parameters={
            "branchings": list(branchings),
            "potential_max_length": POTENTIAL_MAX_LENGTH,
            "quadratic_form_samples": QUADRATIC_FORM_SAMPLES,
        },
        seed=config.seed,
    )
    logger.info("resistance suite: N in %s", branchings)
    for n in branchings:
        _check_potentials(report, n)
        _check_metric(report, n)
        _check_networkx(report, n, config.seed)
        tree = TruncatedTree(n, UNIQUENESS_DEPTH)
        target = tuple(min(letter, n) for letter in UNIQUENESS_TARGET)
        report.add(
            check_residual(
                f"resistance.potential_uniqueness[N={n},D={UNIQUENESS_DEPTH}]",
                potential_uniqueness_spread(target, tree),
                UNIQUENESS_TOLERANCE,
            )
        )
    logger.info("potentials and metric done")

    _check_covariance(report, config.seed)
    _check_quadratic_form(report, config.seed)
    _check_increments(report)
    logger.info("covariance and increments done")
    return report
