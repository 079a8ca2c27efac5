"""Tree potentials, the energy form and the resistance metric.

For a target word η the potential ``v_η(ω) = |η| - common_prefix_len(ω, η)``
solves ``Δ v_η = δ_∅ - δ_η``: one Amp enters at the root and leaves at η,
flowing along the unique path. The base point is always the root.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.sparse
import scipy.sparse.linalg
from numpy.typing import ArrayLike, NDArray

from ..core.graph import (
    ROOT,
    TruncatedTree,
    Word,
    common_prefix_len,
    format_word,
    tree_path_length,
)
from ..core.operators import apply_laplacian, as_vertex_vector, laplacian_matrix

logger = logging.getLogger(__name__)


def potential_value(eta: Sequence[int], omega: Sequence[int]) -> int:
    """``v_η(ω)``; the root's potential ``v_∅`` is identically 0."""
    return len(eta) - common_prefix_len(omega, eta)


def potential_vector(tree: TruncatedTree, eta: Sequence[int]) -> NDArray[np.float64]:
    """``v_η`` at every vertex of the tree."""
    idx = tree.index(eta)
    return (len(eta) - tree.common_prefix_with(idx)).astype(np.float64)


@dataclass(frozen=True, eq=False)
class Potential:
    """``v_η`` realised on a truncated tree."""

    target: Word
    tree: TruncatedTree
    values: NDArray[np.float64]

    def __call__(self, omega: Sequence[int]) -> float:
        return float(self.values[self.tree.index(omega)])

    def source(self) -> NDArray[np.float64]:
        """The right-hand side ``δ_∅ - δ_η``."""
        rhs = np.zeros(self.tree.vertex_count)
        rhs[0] += 1.0
        rhs[self.tree.index(self.target)] -= 1.0
        return rhs

    def interior_residual(self) -> float:
        """``max |Δv - (δ_∅ - δ_η)|`` over vertices of depth ``<= D - 1``."""
        diff = apply_laplacian(self.tree, self.values) - self.source()
        interior = self.tree.depths <= self.tree.depth - 1
        return float(np.max(np.abs(diff[interior])))


def potential(eta: Sequence[int], tree: TruncatedTree) -> Potential:
    """Closed-form potential for target η.

    Raises:
        ValueError: If η is the root or the tree is not deeper than η.
    """
    word = tuple(eta)
    if not word:
        raise ValueError("the root needs no potential: v_∅ is identically 0")
    if tree.depth < len(word) + 1:
        raise ValueError(
            f"potential for {format_word(word)} needs depth >= {len(word) + 1}, got {tree.depth}"
        )
    return Potential(word, tree, potential_vector(tree, word))


def energy(u: ArrayLike, u_prime: ArrayLike, tree: TruncatedTree) -> complex | float:
    """``ℰ(u', u) = Σ_x Σ_{y~x} c(xy) conj(u'(x) - u'(y)) (u(x) - u(y))``.

    The double sum visits every edge in both orientations.
    """
    u = as_vertex_vector(tree, u)
    u_prime = as_vertex_vector(tree, u_prime)
    par = tree.parents[1:]
    du = u[1:] - u[par]
    dup = u_prime[1:] - u_prime[par]
    total = 2.0 * np.sum(tree.conductance[1:] * np.conj(dup) * du)
    return complex(total) if np.iscomplexobj(total) else float(total)


def energy_laplacian_pairing(u: ArrayLike, tree: TruncatedTree) -> float:
    """``2⟨u, Δu⟩``, which equals ``ℰ(u, u)`` on the truncated tree."""
    u = as_vertex_vector(tree, u)
    return float(2.0 * np.real(np.vdot(u, apply_laplacian(tree, u))))


def resistance_dist(x: Sequence[int], y: Sequence[int]) -> float:
    """Resistance metric ``√(2 l(x, y))`` with l the tree path length."""
    return math.sqrt(2.0 * tree_path_length(x, y))


def resistance_dist_four_potential(x: Sequence[int], y: Sequence[int]) -> float:
    """``√2 · (v_x(y) + v_y(x) - v_x(x) - v_y(y))^{1/2}``."""
    value = (
        potential_value(x, y)
        + potential_value(y, x)
        - potential_value(x, x)
        - potential_value(y, y)
    )
    return math.sqrt(2.0) * math.sqrt(value)


def effective_resistance(tree: TruncatedTree, x: Sequence[int], y: Sequence[int]) -> float:
    """Effective resistance between two vertices, computed by networkx.

    The energy form counts each edge twice, so ``resistance_dist² = 2 R_eff``.
    """
    if tuple(x) == tuple(y):
        return 0.0
    graph = tree.to_networkx()
    return float(
        nx.resistance_distance(
            graph, tree.index(x), tree.index(y), weight="conductance", invert_weight=False
        )
    )


def covariance(x: Sequence[int], y: Sequence[int]) -> float:
    """``⟨v_x, v_y⟩_ℰ = 2 (v_y(∅) - v_y(x)) = 2 common_prefix_len(x, y)``."""
    return 2.0 * (potential_value(y, ROOT) - potential_value(y, x))


def covariance_matrix(words: Sequence[Sequence[int]]) -> NDArray[np.float64]:
    """Gram matrix of the potentials over ``words``."""
    size = len(words)
    gram = np.empty((size, size))
    for a in range(size):
        for b in range(a, size):
            gram[a, b] = gram[b, a] = covariance(words[a], words[b])
    return gram


def neg_semidefinite_check(words: Sequence[Sequence[int]], xi: ArrayLike) -> float:
    """``Σ_x Σ_y conj(ξ(x)) l(x, y) ξ(y)`` after projecting ξ to mean zero.

    Non-positive for every mean-zero ξ, since l is half a squared Hilbert distance.
    """
    xi = np.asarray(xi)
    if xi.shape != (len(words),):
        raise ValueError(f"ξ has shape {xi.shape}, expected ({len(words)},)")
    xi = xi - xi.mean()
    lengths = np.array(
        [[tree_path_length(a, b) for b in words] for a in words], dtype=np.float64
    )
    return float(np.real(np.conj(xi) @ lengths @ xi))


def _is_prefix(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def independent_increments_check(
    x: Sequence[int], y: Sequence[int], z: Sequence[int]
) -> float:
    """Residual ``v_y(y) + v_z(x) - v_y(x) - v_z(y)`` for ``x ≤ y ≤ z``.

    This is ``ℰ(v_x - v_y, v_y - v_z) / 2``; it vanishes along nested words.

    Raises:
        ValueError: If the words are not in prefix order.
    """
    if not (_is_prefix(x, y) and _is_prefix(y, z)):
        raise ValueError(
            f"words must be nested: {format_word(x)} ≤ {format_word(y)} ≤ {format_word(z)}"
        )
    return float(
        potential_value(y, y)
        + potential_value(z, x)
        - potential_value(y, x)
        - potential_value(z, y)
    )


def edge_currents(pot: Potential) -> NDArray[np.float64]:
    """Ohm's law current ``c(xy)(v(x) - v(y))`` from parent x to child y.

    Entry k is the current on the edge above vertex k; entry 0 is 0.
    """
    tree = pot.tree
    currents = np.zeros(tree.vertex_count)
    currents[1:] = tree.conductance[1:] * (pot.values[tree.parents[1:]] - pot.values[1:])
    return currents


def kirchhoff_residual(pot: Potential) -> float:
    """Deviation of the net outflow at each vertex from ``δ_∅ - δ_η``."""
    tree = pot.tree
    currents = edge_currents(pot)
    outflow = -currents.copy()
    np.add.at(outflow, tree.parents[1:], currents[1:])
    return float(np.max(np.abs(outflow - pot.source())))


def solve_potential(
    eta: Sequence[int], tree: TruncatedTree, ground: int | None = None
) -> NDArray[np.float64]:
    """Solve ``Δv = δ_∅ - δ_η`` with one vertex held at 0.

    The tree keeps its free boundary; ``ground`` defaults to the last vertex
    of the boundary level.

    Raises:
        ValueError: If η is the root or ground is out of range.
    """
    word = tuple(eta)
    if not word:
        raise ValueError("the root needs no potential: v_∅ is identically 0")
    count = tree.vertex_count
    ground = count - 1 if ground is None else ground
    if not 0 <= ground < count:
        raise ValueError(f"ground vertex {ground} outside 0..{count - 1}")

    rhs = np.zeros(count)
    rhs[0] += 1.0
    rhs[tree.index(word)] -= 1.0
    keep = np.flatnonzero(np.arange(count) != ground)
    lap = laplacian_matrix(tree)
    reduced = scipy.sparse.csc_matrix(lap[keep][:, keep])
    values = np.zeros(count)
    values[keep] = scipy.sparse.linalg.spsolve(reduced, rhs[keep])
    logger.debug("grounded solve for %s on %d vertices", format_word(word), count)
    return values


def potential_uniqueness_spread(eta: Sequence[int], tree: TruncatedTree) -> float:
    """``max - min`` of closed form minus grounded solve over interior vertices."""
    closed = potential(eta, tree).values
    solved = solve_potential(eta, tree)
    interior = tree.depths <= tree.depth - 1
    diff = (closed - solved)[interior]
    return float(diff.max() - diff.min())
