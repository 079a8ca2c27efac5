"""Configuration dataclasses for verification runs."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

THREADS_ENV_VAR = "SPECTRAL_LAB_THREADS"

DEFAULT_SEED = 7
DEFAULT_TRIALS = 1_000_000
DEFAULT_QUADRATURE_NODES = 512
# Suites build depth-8 trees; N^8 vertices must stay in memory.
MAX_BRANCHING = 4


def threads_from_env(default: int = 1) -> int:
    """Worker cap from ``SPECTRAL_LAB_THREADS``; falls back to ``default`` when unset.

    Raises:
        ValueError: If the variable is set but is not a positive integer.
    """
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return value


@dataclass
class VerifyConfig:
    """
    Parameters shared by the verification suites.

    Attributes:
        seed: Root seed; every stochastic check derives its own sub-seed from it.
        trials: Monte Carlo trials per (N, n) random-walk check.
        quadrature_nodes: Gauss–Chebyshev nodes used for measure integrals.
        threads: Worker count for parallel fan-out.
        branchings: Restrict the tree suites to these branchings, each at most
            `MAX_BRANCHING`. Empty means each suite uses its own default set.
            The measures, eigen and lattice suites record but ignore them.
    """

    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    quadrature_nodes: int = DEFAULT_QUADRATURE_NODES
    threads: int = 1
    branchings: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.quadrature_nodes < 2:
            raise ValueError(f"quadrature_nodes must be >= 2, got {self.quadrature_nodes}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if any(not 1 <= n <= MAX_BRANCHING for n in self.branchings):
            raise ValueError(f"branchings must be in 1..{MAX_BRANCHING}, got {self.branchings}")

    @classmethod
    def from_env(cls, **overrides: object) -> VerifyConfig:
        """Build a config whose thread count honours ``SPECTRAL_LAB_THREADS``."""
        overrides.setdefault("threads", threads_from_env())
        return cls(**overrides)  # type: ignore[arg-type]

    def branchings_or(self, default: tuple[int, ...]) -> tuple[int, ...]:
        """The configured branchings, or ``default`` when none were requested."""
        return self.branchings or default
