"""Small shared helpers: seeds and number formatting."""

from __future__ import annotations

import numpy as np


def derive_seed(seed: int, *keys: int) -> np.random.SeedSequence:
    """Deterministic sub-seed for a named stochastic component.

    ``keys`` identify the component (e.g. branching and step count), so two
    checks never share a stream and reordering checks does not change either.
    """
    if seed < 0:
        raise ValueError(f"seed must be >= 0, got {seed}")
    return np.random.SeedSequence([seed, *keys])


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *keys))


def format_float(value: float) -> str:
    """Render with 15 significant digits, the precision used by every CLI output."""
    return f"{value:.15g}"
