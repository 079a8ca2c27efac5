"""Verification suite for closed-walk counts and the random walk on T̃."""

from __future__ import annotations

import logging

from ..core.config import VerifyConfig
from ..core.graph import TruncatedTree
from ..core.utils import make_rng
from ..spectral.walks import (
    WalkConfig,
    WalkCounter,
    count_closed_walks_bruteforce,
    moment_chain,
    moment_identity_check,
    path_count,
    return_probability_exact,
    return_probability_matrix_free,
    transition_identity_residual,
    walk_simulate,
)
from .base import VerificationReport, check_bound, check_exact, check_residual

logger = logging.getLogger(__name__)

WALK_BRANCHINGS = (1, 2, 3, 4)
BRUTEFORCE_BRANCHINGS = (1, 2, 3)
BRUTEFORCE_MAX_STEPS = 8
MOMENT_MAX_ORDER = 16
MATRIX_FREE_MAX_STEPS = 14
TRANSITION_DEPTH = 5
RANDOM_VECTORS = 10
SIMULATION_BRANCHINGS = (1, 2)
SIMULATION_STEPS = (2, 4, 7, 10)
DETERMINISM_TRIALS = 20_000

MOMENT_RTOL = 1e-9
EXACT_TOLERANCE = 1e-12
Z_SCORE_LIMIT = 4.0


def _check_counts(report: VerificationReport, n: int) -> None:
    if n in BRUTEFORCE_BRANCHINGS:
        mismatches = [
            k
            for k in range(BRUTEFORCE_MAX_STEPS + 1)
            if count_closed_walks_bruteforce(n, k) != path_count(n, k)
        ]
        report.add(
            check_exact(
                f"walks.dp_matches_enumeration[N={n},n<={BRUTEFORCE_MAX_STEPS}]",
                mismatches,
                [],
            )
        )
    counter = WalkCounter(n, MOMENT_MAX_ORDER)
    bad_totals = [
        step
        for step in range(MOMENT_MAX_ORDER + 1)
        if sum(counter.level_distribution(step)) != (n + 1) ** step
    ]
    report.add(
        check_exact(
            f"walks.level_distribution_total[N={n},n<={MOMENT_MAX_ORDER}]",
            bad_totals,
            [],
            details="all (N+1)ⁿ walks are accounted for",
        )
    )


def _check_moments(report: VerificationReport, n: int, nodes: int) -> None:
    quadrature = max(moment_identity_check(n, k, nodes) for k in range(MOMENT_MAX_ORDER + 1))
    report.add(
        check_residual(
            f"walks.moment_identity[N={n},n<={MOMENT_MAX_ORDER}]",
            quadrature,
            MOMENT_RTOL,
            details="∫ xⁿ dμ_{c+p} = N_T̃(n) / (2√N)ⁿ",
        )
    )
    chain = max(moment_chain(n, k).relative_error for k in range(MOMENT_MAX_ORDER + 1))
    report.add(
        check_residual(
            f"walks.jacobi_moment_from_paths[N={n},n<={MOMENT_MAX_ORDER}]",
            chain,
            MOMENT_RTOL,
        )
    )
    matrix_free = max(
        abs(return_probability_matrix_free(n, k) - float(return_probability_exact(n, k)))
        for k in range(MATRIX_FREE_MAX_STEPS + 1)
    )
    report.add(
        check_residual(
            f"walks.matrix_free_return_probability[N={n},n<={MATRIX_FREE_MAX_STEPS}]",
            matrix_free,
            EXACT_TOLERANCE,
        )
    )


def _check_transition(report: VerificationReport, n: int, seed: int) -> None:
    tree = TruncatedTree(n, TRANSITION_DEPTH)
    rng = make_rng(seed, 4, n)
    worst = 0.0
    for _ in range(RANDOM_VECTORS):
        v = rng.standard_normal(tree.vertex_count)
        v[tree.depths == tree.depth] = 0.0
        worst = max(worst, transition_identity_residual(tree, v))
    report.add(
        check_residual(
            f"walks.laplacian_transition_identity[N={n}]",
            worst,
            EXACT_TOLERANCE,
            details="Δ = (N+1)(I - 𝓜̃) away from the boundary",
        )
    )


def _check_simulation(report: VerificationReport, config: VerifyConfig) -> None:
    for n in config.branchings_or(SIMULATION_BRANCHINGS):
        for steps in SIMULATION_STEPS:
            cfg = WalkConfig(
                branching=n,
                steps=steps,
                trials=config.trials,
                seed=config.seed,
                workers=config.threads,
            )
            estimate = walk_simulate(cfg)
            exact = float(return_probability_exact(n, steps))
            report.add(
                check_bound(
                    f"walks.monte_carlo_return[N={n},n={steps},trials={config.trials}]",
                    estimate.z_score(exact),
                    high=Z_SCORE_LIMIT,
                    details=f"frequency {estimate.frequency:.6f} vs exact {exact:.6f}",
                )
            )
            logger.debug("N=%d n=%d frequency %.6f exact %.6f", n, steps, estimate.frequency, exact)

    cfg = WalkConfig(
        branching=2,
        steps=SIMULATION_STEPS[-1],
        trials=DETERMINISM_TRIALS,
        seed=config.seed,
        workers=config.threads,
    )
    first, second = walk_simulate(cfg), walk_simulate(cfg)
    report.add(check_exact("walks.simulation_deterministic", second.returns, first.returns))


def verify_walks(config: VerifyConfig) -> VerificationReport:
    """Exact path counts, the moment identities and the Monte Carlo return frequency."""
    branchings = config.branchings_or(WALK_BRANCHINGS)
    report = VerificationReport(
        suite="walks",
        parameters={
            "branchings": list(branchings),
            "trials": config.trials,
            "threads": config.threads,
            "quadrature_nodes": config.quadrature_nodes,
        },
        seed=config.seed,
    )
    logger.info("walks suite: N in %s, %d trials", branchings, config.trials)
    for n in branchings:
        _check_counts(report, n)
        _check_moments(report, n, config.quadrature_nodes)
        _check_transition(report, n, config.seed)
    logger.info("exact counts done")
    _check_simulation(report, config)
    logger.info("monte carlo done")
    return report
