"""Verification suite for tree combinatorics and the tree operators."""

from __future__ import annotations

import logging
from itertools import product

import networkx as nx
import numpy as np

from ..core.config import VerifyConfig
from ..core.graph import TruncatedTree
from ..core.operators import (
    IDENTITY_NAMES,
    apply_laplacian,
    jacobi_moment,
    jacobi_re_shift,
    verify_operator_identities,
)
from ..core.utils import make_rng
from ..spectral.measures import mu_c_moment
from .base import (
    VerificationReport,
    check_exact,
    check_flag,
    check_residual,
    check_skipped,
)

logger = logging.getLogger(__name__)

OPERATORS_BRANCHINGS = (1, 2, 3)
OPERATORS_DEPTH = 6
ROUNDTRIP_BRANCHINGS = (1, 2, 3, 4)
ROUNDTRIP_DEPTH = 8
METRIC_DEPTH = 4
BFS_DEPTH = 5
RANDOM_VECTORS = 20
SEMICIRCLE_ORDERS = 12

IDENTITY_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-12
MOMENT_TOLERANCE = 1e-12
ODD_MOMENT_TOLERANCE = 1e-14
SMALL_TREE_MAX_BRANCHING = 3
LARGE_BRANCHING_DEPTH = 4


def _depth_for(n: int) -> int:
    return OPERATORS_DEPTH if n <= SMALL_TREE_MAX_BRANCHING else LARGE_BRANCHING_DEPTH


def _check_roundtrip(report: VerificationReport, n: int) -> None:
    tree = TruncatedTree(n, ROUNDTRIP_DEPTH)
    bad = sum(1 for idx in range(tree.vertex_count) if tree.index(tree.word(idx)) != idx)
    expected_count = sum(n**k for k in range(ROUNDTRIP_DEPTH + 1))
    report.add(check_exact(f"graph.index_roundtrip[N={n},D={ROUNDTRIP_DEPTH}]", bad, 0))
    report.add(
        check_exact(
            f"graph.vertex_count[N={n},D={ROUNDTRIP_DEPTH}]", tree.vertex_count, expected_count
        )
    )


def _check_neighbors(report: VerificationReport, n: int) -> None:
    tree = TruncatedTree(n, _depth_for(n))
    degrees = np.array([len(tree.neighbors(idx)) for idx in range(tree.vertex_count)])
    inner = (tree.depths > 0) & (tree.depths < tree.depth)
    ok = (
        degrees[0] == n
        and bool(np.all(degrees[inner] == n + 1))
        and bool(np.all(degrees[tree.depths == tree.depth] == 1))
    )
    report.add(
        check_flag(
            f"graph.neighbor_counts[N={n}]",
            ok,
            expected=f"root {n}, interior {n + 1}, leaves 1",
            actual=f"root {degrees[0]}, interior {sorted(set(degrees[inner].tolist()))}",
        )
    )


def _check_metric(report: VerificationReport, n: int) -> None:
    tree = TruncatedTree(n, METRIC_DEPTH)
    dist = tree.path_length_matrix()
    symmetric = bool(np.array_equal(dist, dist.T))
    identity = bool(np.all((dist == 0) == np.eye(tree.vertex_count, dtype=bool)))
    triangle = int(np.max(dist[:, None, :] - dist[:, :, None] - dist[None, :, :]))
    report.add(
        check_flag(
            f"graph.metric_axioms[N={n},depth<={METRIC_DEPTH}]",
            symmetric and identity and triangle <= 0,
            expected="symmetric, zero only on the diagonal, triangle inequality",
            actual=f"symmetric={symmetric} identity={identity} worst_triangle_excess={triangle}",
        )
    )


def _check_bfs(report: VerificationReport, n: int) -> None:
    tree = TruncatedTree(n, BFS_DEPTH)
    dist = tree.path_length_matrix()
    graph = tree.to_networkx()
    mismatches = 0
    for source, lengths in nx.all_pairs_shortest_path_length(graph):
        for target, length in lengths.items():
            mismatches += int(dist[source, target] != length)
    report.add(check_exact(f"graph.bfs_distance[N={n},depth<={BFS_DEPTH}]", mismatches, 0))


def _check_identities(report: VerificationReport, n: int) -> None:
    depth = _depth_for(n)
    tree = TruncatedTree(n, depth)
    worst = verify_operator_identities(tree)
    for name in IDENTITY_NAMES:
        if n == 1 and name == "cuntz_orthogonality":
            report.add(check_skipped(f"operators.{name}[N=1,D={depth}]", "needs two letters"))
            continue
        report.add(
            check_residual(
                f"operators.{name}[N={n},D={depth}]",
                worst[name],
                IDENTITY_TOLERANCE,
            )
        )


def _check_symmetry(report: VerificationReport, n: int, seed: int) -> None:
    tree = TruncatedTree(n, _depth_for(n))
    rng = make_rng(seed, 1, n)
    asym = 0.0
    negativity = 0.0
    for _ in range(RANDOM_VECTORS):
        u = rng.standard_normal(tree.vertex_count)
        v = rng.standard_normal(tree.vertex_count)
        lu, lv = apply_laplacian(tree, u), apply_laplacian(tree, v)
        scale = max(1.0, float(np.linalg.norm(u) * np.linalg.norm(v)))
        asym = max(asym, abs(float(u @ lv - lu @ v)) / scale)
        negativity = max(negativity, -float(v @ lv))
    report.add(check_residual(f"operators.laplacian_symmetric[N={n}]", asym, SYMMETRY_TOLERANCE))
    report.add(
        check_residual(f"operators.laplacian_positive[N={n}]", negativity, SYMMETRY_TOLERANCE)
    )


def _check_semicircle_moments(report: VerificationReport) -> None:
    matrix = jacobi_re_shift(SEMICIRCLE_ORDERS + 1)
    even = max(
        abs(jacobi_moment(matrix, 2 * k) - float(mu_c_moment(2 * k)))
        for k in range(SEMICIRCLE_ORDERS + 1)
    )
    odd = max(abs(jacobi_moment(matrix, 2 * k + 1)) for k in range(SEMICIRCLE_ORDERS))
    report.add(
        check_residual(
            f"operators.re_shift_even_moments[2n<={2 * SEMICIRCLE_ORDERS}]",
            even,
            MOMENT_TOLERANCE,
            details="⟨δ_0, (Re S)^{2n} δ_0⟩ = C_n / 4^n",
        )
    )
    report.add(
        check_residual(
            f"operators.re_shift_odd_moments[n<{2 * SEMICIRCLE_ORDERS}]",
            odd,
            ODD_MOMENT_TOLERANCE,
        )
    )


def verify_operators(config: VerifyConfig) -> VerificationReport:
    """Word combinatorics, Laplacian properties and the shift identities."""
    branchings = config.branchings_or(OPERATORS_BRANCHINGS)
    report = VerificationReport(
        suite="operators",
        parameters={"branchings": list(branchings), "depth": OPERATORS_DEPTH},
        seed=config.seed,
    )
    logger.info("operators suite: N in %s", branchings)

    for n in ROUNDTRIP_BRANCHINGS:
        _check_roundtrip(report, n)
    for n in branchings:
        _check_neighbors(report, n)
    for n, check in product(
        [n for n in branchings if n <= SMALL_TREE_MAX_BRANCHING], (_check_metric, _check_bfs)
    ):
        check(report, n)
    logger.info("graph checks done")

    for n in branchings:
        _check_identities(report, n)
        _check_symmetry(report, n, config.seed)
    _check_semicircle_moments(report)
    logger.info("operator checks done")
    return report
