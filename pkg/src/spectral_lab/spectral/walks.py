"""Closed walks on T̃, the tree with a loop added at the root.

The number ``N_T̃(n)`` of closed walks of length n at the root is computed
exactly by a dynamic program over the distance from the root, which is a
sufficient statistic: from level 0 a walk either takes the loop or descends
to one of N children, from level k >= 1 it ascends along one edge or
descends along N. The same counts are the moments of μ_{c+p}:
``∫ xⁿ dμ_{c+p} = N_T̃(n) / (2√N)ⁿ``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from ..core.config import DEFAULT_QUADRATURE_NODES
from ..core.graph import TruncatedTree
from ..core.operators import apply_laplacian, apply_transition, jacobi_D_omega, jacobi_moment
from ..core.utils import derive_seed
from .measures import perturbed_measure

logger = logging.getLogger(__name__)

PATH_COUNT_MAX_STEPS = 4000
SIMULATION_BATCH = 1 << 18


@dataclass
class WalkCounter:
    """Exact walk counts by distance from the root.

    ``counts[level][step]`` is the number of length-``step`` walks that start
    at the root and end at distance ``level``.

    Attributes:
        branching: Number of children per vertex.
        horizon: Largest step count tabulated.
    """

    branching: int
    horizon: int
    counts: list[list[int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.branching < 1:
            raise ValueError(f"branching must be >= 1, got {self.branching}")
        if self.horizon < 0:
            raise ValueError(f"horizon must be >= 0, got {self.horizon}")
        if self.horizon > PATH_COUNT_MAX_STEPS:
            raise OverflowError(
                f"horizon {self.horizon} exceeds the cap {PATH_COUNT_MAX_STEPS}"
            )
        n = self.branching
        levels = self.horizon + 1
        counts = [[0] * (self.horizon + 1) for _ in range(levels)]
        counts[0][0] = 1
        for step in range(self.horizon):
            for level in range(min(step, self.horizon) + 1):
                ways = counts[level][step]
                if not ways:
                    continue
                if level == 0:
                    counts[0][step + 1] += ways
                else:
                    counts[level - 1][step + 1] += ways
                if level + 1 < levels:
                    counts[level + 1][step + 1] += n * ways
        self.counts = counts

    def closed_walks(self, step: int) -> int:
        """``N_T̃(step)``."""
        self._check_step(step)
        return self.counts[0][step]

    def level_distribution(self, step: int) -> list[int]:
        """Walk counts ending at each level ``0..step`` after ``step`` steps."""
        self._check_step(step)
        return [self.counts[level][step] for level in range(step + 1)]

    def _check_step(self, step: int) -> None:
        if not 0 <= step <= self.horizon:
            raise ValueError(f"step {step} outside 0..{self.horizon}")


def path_count(branching: int, n: int) -> int:
    """Number of closed walks of length n at the root of T̃."""
    if n < 0:
        raise ValueError(f"walk length must be >= 0, got {n}")
    return WalkCounter(branching, n).closed_walks(n)


def count_closed_walks_bruteforce(branching: int, n: int) -> int:
    """Enumerate every edge walk of length n from the root of T̃.

    Walks that return within n steps never pass depth ``n // 2``, so a tree of
    depth ``n // 2 + 1`` suffices.
    """
    if n < 0:
        raise ValueError(f"walk length must be >= 0, got {n}")
    graph = TruncatedTree(branching, n // 2 + 1).to_networkx(root_loop=True)
    adjacency = {node: list(graph.neighbors(node)) for node in graph.nodes}

    def walks_from(node: int, remaining: int) -> int:
        if remaining == 0:
            return int(node == 0)
        return sum(walks_from(nxt, remaining - 1) for nxt in adjacency[node])

    return walks_from(0, n)


def return_probability_exact(branching: int, n: int) -> Fraction:
    """``p(∅, ∅; n) = N_T̃(n) / (N+1)ⁿ`` for the walk with uniform edge weights."""
    return Fraction(path_count(branching, n), (branching + 1) ** n)


def return_probability_matrix_free(branching: int, n: int) -> float:
    """``⟨δ_∅, 𝓜̃ⁿ δ_∅⟩`` by repeated application of the transition operator."""
    if n < 0:
        raise ValueError(f"walk length must be >= 0, got {n}")
    tree = TruncatedTree(branching, n // 2 + 1)
    v = np.zeros(tree.vertex_count)
    v[0] = 1.0
    for _ in range(n):
        v = apply_transition(tree, v)
    return float(v[0])


def transition_identity_residual(tree: TruncatedTree, v: NDArray[np.float64]) -> float:
    """``max |Δv - (N+1)(v - 𝓜̃v)|`` for v supported at depth ``<= D - 1``."""
    if np.any(v[tree.depths == tree.depth] != 0):
        raise ValueError("vector must vanish on the boundary level")
    lhs = apply_laplacian(tree, v)
    rhs = (tree.branching + 1) * (v - apply_transition(tree, v))
    return float(np.max(np.abs(lhs - rhs)))


@dataclass
class WalkConfig:
    """Monte Carlo parameters for the walk on T̃.

    Attributes:
        branching: Number of children per vertex.
        steps: Walk length n.
        trials: Number of independent walks.
        seed: Root seed; worker streams are spawned from it.
        workers: Number of parallel workers.
    """

    branching: int
    steps: int
    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.branching < 1:
            raise ValueError(f"branching must be >= 1, got {self.branching}")
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class WalkEstimate:
    """Empirical return frequency with its binomial standard error."""

    returns: int
    trials: int

    @property
    def frequency(self) -> float:
        return self.returns / self.trials

    @property
    def standard_error(self) -> float:
        p = self.frequency
        return math.sqrt(p * (1.0 - p) / self.trials)

    def z_score(self, exact: float) -> float:
        """Distance to ``exact`` in units of the exact binomial standard deviation."""
        sigma = math.sqrt(exact * (1.0 - exact) / self.trials)
        if sigma == 0.0:
            return 0.0 if self.frequency == exact else math.inf
        return abs(self.frequency - exact) / sigma


def _simulate_returns(
    branching: int, steps: int, trials: int, seed: np.random.SeedSequence
) -> int:
    """Run the distance-from-root chain; count walkers back at level 0."""
    rng = np.random.default_rng(seed)
    stay_or_up = 1.0 / (branching + 1)
    returns = 0
    remaining = trials
    while remaining:
        batch = min(remaining, SIMULATION_BATCH)
        level = np.zeros(batch, dtype=np.int64)
        for _ in range(steps):
            down = rng.random(batch) >= stay_or_up
            level = np.where(down, level + 1, np.maximum(level - 1, 0))
        returns += int(np.count_nonzero(level == 0))
        remaining -= batch
    return returns


def walk_simulate(cfg: WalkConfig) -> WalkEstimate:
    """Fraction of trials back at the root after ``cfg.steps`` steps.

    Trials are split across ``cfg.workers`` threads with seeds spawned from
    ``(seed, N, n)``; the counts are summed in worker order, so the result is
    fixed by the seed and the worker count.
    """
    if cfg.steps == 0:
        return WalkEstimate(cfg.trials, cfg.trials)

    workers = min(cfg.workers, cfg.trials)
    seeds = derive_seed(cfg.seed, cfg.branching, cfg.steps).spawn(workers)
    share, extra = divmod(cfg.trials, workers)
    shares = [share + (1 if k < extra else 0) for k in range(workers)]
    logger.debug(
        "walk simulation N=%d n=%d trials=%d workers=%d seed=%d",
        cfg.branching,
        cfg.steps,
        cfg.trials,
        workers,
        cfg.seed,
    )
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_simulate_returns, cfg.branching, cfg.steps, count, seq)
            for count, seq in zip(shares, seeds)
        ]
        returns = sum(f.result() for f in futures)
    return WalkEstimate(returns, cfg.trials)


def moment_identity_check(
    branching: int, n: int, nodes: int = DEFAULT_QUADRATURE_NODES
) -> float:
    """Relative gap between ``∫ xⁿ dμ_{c+p}`` and ``N_T̃(n) / (2√N)ⁿ``.

    Raises:
        ValueError: If n is beyond the quadrature exactness bound ``2K - 1``.
    """
    if not 0 <= n <= 2 * nodes - 1:
        raise ValueError(f"moment order must be in 0..{2 * nodes - 1}, got {n}")
    target = path_count(branching, n) / (2.0 * math.sqrt(branching)) ** n
    value = perturbed_measure(branching, nodes).moment(n)
    return abs(value - target) / max(1.0, abs(target))


@dataclass(frozen=True)
class MomentChain:
    """``⟨δ_0, D_Ωⁿ δ_0⟩`` next to its reconstruction from path counts."""

    order: int
    jacobi: float
    from_paths: int

    @property
    def relative_error(self) -> float:
        return abs(self.jacobi - self.from_paths) / max(1.0, abs(self.from_paths))


def moment_chain(branching: int, n: int) -> MomentChain:
    """Jacobi moment of D_Ω against ``Σ_k C(n,k) (N+1)^{n-k} (-1)^k N_T̃(k)``.

    The binomial sum is ``∫ (N+1-2√N x)ⁿ dμ_{c+p}`` rewritten through the
    moment identity, so it is an exact integer.
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0, got {n}")
    counter = WalkCounter(branching, n)
    from_paths = sum(
        math.comb(n, k) * (branching + 1) ** (n - k) * (-1) ** k * counter.closed_walks(k)
        for k in range(n + 1)
    )
    jacobi = jacobi_moment(jacobi_D_omega(branching, n // 2 + 1), n)
    return MomentChain(order=n, jacobi=jacobi, from_paths=from_paths)
