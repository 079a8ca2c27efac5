"""Cyclic subspace decomposition of the tree Laplacian.

Level m of the tree is identified with ``(ℂ^N)^{⊗m}``: the word ``ω_1…ω_m``
maps to ``e_{ω_1} ⊗ … ⊗ e_{ω_m}``. With an orthonormal basis ``x_1 = s_0,
x_2, …, x_N`` of ℂ^N (``s_0`` the normalised all-ones vector), every label
``i_1…i_n`` with ``i_n ≠ 1`` spans a chain
``x_{i_1} ⊗ … ⊗ x_{i_n} ⊗ s_0^{⊗p}``, p = 0, 1, …, on which Δ acts as the
Jacobi matrix ``D``. The root chain ``δ_∅, s_0, s_0⊗s_0, …`` (label Ω) carries
``D_Ω`` instead.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np
from numpy.typing import NDArray

from ..core.config import DEFAULT_QUADRATURE_NODES
from ..core.graph import ROOT, TruncatedTree, Word, format_word, validate_word
from ..core.operators import jacobi_D, jacobi_D_omega, laplacian_matrix
from .measures import perturbed_measure

logger = logging.getLogger(__name__)

OMEGA = "Ω"


def orthobasis_with_s0(branching: int) -> NDArray[np.float64]:
    """Rows ``x_1 .. x_N`` of an orthonormal basis of ℝ^N with ``x_1 = s_0``.

    The completion is the Householder reflection exchanging ``e_1`` and ``s_0``,
    applied to the standard basis.
    """
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    s0 = np.full(branching, 1.0 / math.sqrt(branching))
    u = -s0
    u[0] += 1.0
    norm2 = float(u @ u)
    if norm2 < 1e-30:
        return np.eye(branching)
    return np.eye(branching) - 2.0 * np.outer(u, u) / norm2


@dataclass(frozen=True)
class CyclicLabel:
    """Ω (the empty word) or a word whose last letter is not 1."""

    word: Word = ROOT

    def __post_init__(self) -> None:
        word = tuple(int(i) for i in self.word)
        if word and word[-1] == 1:
            raise ValueError(f"cyclic label {format_word(word)} must not end in letter 1")
        if any(i < 1 for i in word):
            raise ValueError(f"cyclic label letters must be >= 1, got {word}")
        object.__setattr__(self, "word", word)

    @property
    def is_omega(self) -> bool:
        return not self.word

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return OMEGA if self.is_omega else format_word(self.word)


def cyclic_labels(branching: int, max_length: int) -> list[CyclicLabel]:
    """Ω followed by every label of length ``1..max_length``, shortest first."""
    if max_length < 0:
        raise ValueError(f"max_length must be >= 0, got {max_length}")
    labels = [CyclicLabel()]
    letters = range(1, branching + 1)
    for n in range(1, max_length + 1):
        labels.extend(
            CyclicLabel(word) for word in product(letters, repeat=n) if word[-1] != 1
        )
    return labels


@dataclass(frozen=True, eq=False)
class CyclicBasisVector:
    """Level-p member of a label's chain, realised as a vertex vector."""

    label: CyclicLabel
    level: int
    values: NDArray[np.float64]

    @property
    def word_length(self) -> int:
        return len(self.label) + self.level


def _level_letters(tree: TruncatedTree, m: int) -> NDArray[np.int64]:
    """``letters[k, j]`` is the (k+1)-th letter of the j-th word of length m."""
    n = tree.branching
    position = np.arange(n**m, dtype=np.int64)
    powers = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return (position[None, :] // powers[:, None]) % n + 1


def cyclic_vector(
    label: CyclicLabel | Sequence[int], level: int, tree: TruncatedTree
) -> CyclicBasisVector:
    """``x_{i_1} ⊗ … ⊗ x_{i_n} ⊗ s_0^{⊗p}`` on the words of length ``n + p``.

    Raises:
        ValueError: If ``n + p`` exceeds the tree depth or a letter is out of range.
    """
    if not isinstance(label, CyclicLabel):
        label = CyclicLabel(tuple(label))
    validate_word(label.word, tree.branching)
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    m = len(label) + level
    if m > tree.depth:
        raise ValueError(f"label {label} at level {level} needs depth {m} > {tree.depth}")

    basis = orthobasis_with_s0(tree.branching)
    span = tree.level(m)
    entries = np.full(len(span), tree.branching ** (-level / 2.0))
    if label.word:
        letters = _level_letters(tree, m)
        for k, i in enumerate(label.word):
            entries *= basis[i - 1, letters[k] - 1]
    values = np.zeros(tree.vertex_count)
    values[span.start : span.stop] = entries
    return CyclicBasisVector(label=label, level=level, values=values)


@dataclass(frozen=True)
class BlockStructure:
    """Deviations of ``⟨b, Δ b'⟩`` from the predicted block-diagonal form.

    Attributes:
        max_deviation: Largest error on same-label entries against D_Ω / D.
        cross_deviation: Largest magnitude of an entry between distinct labels.
        orthonormality: Largest deviation of the Gram matrix from identity.
        vectors: Number of basis vectors compared.
    """

    max_deviation: float
    cross_deviation: float
    orthonormality: float
    vectors: int

    @property
    def worst(self) -> float:
        return max(self.max_deviation, self.cross_deviation, self.orthonormality)


def _basis_matrix(
    tree: TruncatedTree, labels: Sequence[CyclicLabel], max_level: int
) -> tuple[NDArray[np.float64], list[tuple[int, int]]]:
    columns = []
    keys = []
    for li, label in enumerate(labels):
        for p in range(max_level + 1):
            columns.append(cyclic_vector(label, p, tree).values)
            keys.append((li, p))
    return np.column_stack(columns), keys


def verify_block_structure(
    tree: TruncatedTree,
    max_level: int,
    labels: Sequence[CyclicLabel] | None = None,
) -> BlockStructure:
    """Compare ``⟨b, Δ b'⟩`` for all constructed pairs with D_Ω ⊕ D ⊕ D ⊕ ….

    Labels default to every label of length <= 2.

    Raises:
        ValueError: If a chain would reach the boundary level.
    """
    if labels is None:
        labels = cyclic_labels(tree.branching, 2)
    longest = max(len(label) for label in labels)
    if max_level + longest > tree.depth - 1:
        raise ValueError(
            f"depth {tree.depth} too small: max_level {max_level} + label length "
            f"{longest} must be <= {tree.depth - 1}"
        )

    basis, keys = _basis_matrix(tree, labels, max_level)
    gram = basis.T @ basis
    inner = basis.T @ (laplacian_matrix(tree) @ basis)

    size = max_level + 1
    omega_block = jacobi_D_omega(tree.branching, size).to_dense()
    label_block = jacobi_D(tree.branching, size).to_dense()

    same = 0.0
    cross = 0.0
    for a, (la, pa) in enumerate(keys):
        for b, (lb, pb) in enumerate(keys):
            if la != lb:
                cross = max(cross, abs(inner[a, b]))
                continue
            block = omega_block if labels[la].is_omega else label_block
            same = max(same, abs(inner[a, b] - block[pa, pb]))
    ortho = float(np.max(np.abs(gram - np.eye(len(keys)))))
    logger.debug(
        "block structure N=%d D=%d: same=%.3g cross=%.3g ortho=%.3g",
        tree.branching,
        tree.depth,
        same,
        cross,
        ortho,
    )
    return BlockStructure(same, cross, ortho, len(keys))


def level_rank(tree: TruncatedTree, m: int) -> tuple[int, int]:
    """Rank of the cyclic vectors supported on word length m, and their count.

    Every label of length n <= m contributes its level ``m - n`` vector; the
    family spans level m exactly when the rank is ``N^m``.
    """
    if not 0 <= m <= tree.depth:
        raise ValueError(f"word length {m} outside 0..{tree.depth}")
    span = tree.level(m)
    rows = [
        cyclic_vector(label, m - len(label), tree).values[span.start : span.stop]
        for label in cyclic_labels(tree.branching, m)
    ]
    matrix = np.vstack(rows)
    return int(np.linalg.matrix_rank(matrix)), len(rows)


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Atoms ``λ_j`` with weights ``w_j``, eigenvalues in ascending order."""

    eigenvalues: NDArray[np.float64]
    weights: NDArray[np.float64]

    def moment(self, n: int) -> float:
        return float(np.dot(self.weights, self.eigenvalues**n))

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    @property
    def max_weight(self) -> float:
        return float(self.weights.max())


def truncated_spectral_measure(branching: int, size: int) -> DiscreteMeasure:
    """δ_0 spectral measure of the size-M truncation of D_Ω.

    Raises:
        ValueError: If ``size < 1``.
        RuntimeError: If the eigen-solve fails.
    """
    eigenvalues, vectors = jacobi_D_omega(branching, size).eigh()
    weights = vectors[0, :] ** 2
    return DiscreteMeasure(np.asarray(eigenvalues), weights)


def image_cdf(branching: int, lam: float, nodes: int = DEFAULT_QUADRATURE_NODES) -> float:
    """CDF at λ of μ_{c+p} pushed forward by ``x ↦ N + 1 - 2√N x``."""
    t = (branching + 1.0 - lam) / (2.0 * math.sqrt(branching))
    return 1.0 - perturbed_measure(branching, nodes).cdf(t)


def kolmogorov_distance(
    discrete: DiscreteMeasure, branching: int, nodes: int = DEFAULT_QUADRATURE_NODES
) -> float:
    """Sup distance between the step CDF of ``discrete`` and the image CDF.

    The continuous CDF is monotone, so the supremum is attained at an atom,
    from the left or from the right.
    """
    cumulative = np.cumsum(discrete.weights)
    below = np.concatenate([[0.0], cumulative[:-1]])
    worst = 0.0
    for lam, left, right in zip(discrete.eigenvalues, below, cumulative):
        target = image_cdf(branching, float(lam), nodes)
        worst = max(worst, abs(target - left), abs(target - right))
    return worst


def max_weight_decay(branching: int, sizes: Sequence[int]) -> list[tuple[int, float]]:
    """Largest eigen-weight of each truncation; it shrinks as M grows."""
    return [(m, truncated_spectral_measure(branching, m).max_weight) for m in sizes]
