"""Matrix-free tree operators and Jacobi matrices.

Operators act on vertex vectors: dense arrays indexed like `TruncatedTree`.
On the truncated tree, ``S_i`` annihilates the boundary level (its target
``τ_i x`` would leave the truncation), so the shift identities hold only on
vectors supported at depth ``<= D - 2``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
from numpy.typing import ArrayLike, NDArray

from .graph import TruncatedTree

logger = logging.getLogger(__name__)

IDENTITY_NAMES = (
    "s_i_s_i_adjoint",
    "sum_s_adjoint_s",
    "u_adjoint",
    "laplacian_u",
    "cuntz_orthogonality",
    "laplacian_shifts",
)


def as_vertex_vector(tree: TruncatedTree, v: ArrayLike) -> NDArray:
    """Validate a vertex vector: right length, finite entries."""
    arr = np.asarray(v)
    if arr.shape != (tree.vertex_count,):
        raise ValueError(
            f"vertex vector has shape {arr.shape}, expected ({tree.vertex_count},)"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("vertex vector has non-finite entries")
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64, copy=False)
    return arr


def basis_vector(tree: TruncatedTree, w: Sequence[int]) -> NDArray[np.float64]:
    """The indicator δ_w."""
    v = np.zeros(tree.vertex_count)
    v[tree.index(w)] = 1.0
    return v


def apply_laplacian(tree: TruncatedTree, v: ArrayLike) -> NDArray:
    """``(Δv)(x) = Σ_{y~x} c(xy) (v(x) - v(y))`` on the truncated tree."""
    v = as_vertex_vector(tree, v)
    par = tree.parents[1:]
    flow = tree.conductance[1:] * (v[1:] - v[par])
    out = np.zeros_like(v)
    out[1:] += flow
    np.add.at(out, par, -flow)
    return out


def laplacian_matrix(tree: TruncatedTree) -> scipy.sparse.csr_matrix:
    """Sparse matrix of `apply_laplacian`."""
    n = tree.vertex_count
    child = np.arange(1, n)
    par = tree.parents[1:]
    c = tree.conductance[1:]
    degree = np.zeros(n)
    np.add.at(degree, child, c)
    np.add.at(degree, par, c)
    rows = np.concatenate([np.arange(n), child, par])
    cols = np.concatenate([np.arange(n), par, child])
    vals = np.concatenate([degree, -c, -c])
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))


def apply_transition(tree: TruncatedTree, v: ArrayLike, *, root_loop: bool = True) -> NDArray:
    """Transition operator of the simple random walk with weights ``1/(N+1)``.

    With ``root_loop`` this is the walk on T̃: the root keeps the walker with
    probability ``1/(N+1)`` through its loop edge.
    """
    v = as_vertex_vector(tree, v)
    par = tree.parents[1:]
    out = np.zeros_like(v)
    out[1:] += v[par]
    np.add.at(out, par, v[1:])
    if root_loop:
        out[0] += v[0]
    return out / (tree.branching + 1)


def apply_U(tree: TruncatedTree, v: ArrayLike) -> NDArray:
    """``(Uv)(x) = v(σx)``."""
    v = as_vertex_vector(tree, v)
    return v[tree.parents].copy()


def apply_U_adjoint(tree: TruncatedTree, v: ArrayLike) -> NDArray:
    """``(U*v)(y) = Σ_i v(yi) + [y = ∅] v(∅)``."""
    v = as_vertex_vector(tree, v)
    out = np.zeros_like(v)
    np.add.at(out, tree.parents[1:], v[1:])
    out[0] += v[0]
    return out


def apply_S(tree: TruncatedTree, v: ArrayLike, i: int) -> NDArray:
    """``(S_i v)(x) = v(τ_i x)``, zero on the boundary level."""
    v = as_vertex_vector(tree, v)
    target = tree.child_indices(i)
    out = np.zeros_like(v)
    inner = target >= 0
    out[inner] = v[target[inner]]
    return out


def apply_S_adjoint(tree: TruncatedTree, v: ArrayLike, i: int) -> NDArray:
    """``(S_i* v)(ω) = δ_{ω_n, i} v(σω)``, zero at the root."""
    v = as_vertex_vector(tree, v)
    if not 1 <= i <= tree.branching:
        raise ValueError(f"letter {i} out of range 1..{tree.branching}")
    out = np.zeros_like(v)
    hit = tree.last_letters == i
    out[hit] = v[tree.parents[hit]]
    return out


def project_root(tree: TruncatedTree, v: ArrayLike) -> NDArray:
    """Orthogonal projection P_∅ onto δ_∅."""
    v = as_vertex_vector(tree, v)
    out = np.zeros_like(v)
    out[0] = v[0]
    return out


def verify_operator_identities(tree: TruncatedTree) -> dict[str, float]:
    """Check the shift identities on every interior basis vector.

    Interior means word length ``<= D - 2``; there the truncation is invisible
    to every product below. The tree must have unit conductance.

    Returns:
        Max absolute deviation per identity, keyed by `IDENTITY_NAMES`.

    Raises:
        ValueError: If ``D < 3`` or the conductance is not constant 1.
    """
    if tree.depth < 3:
        raise ValueError(f"operator identities need depth >= 3, got {tree.depth}")
    if not tree.unit_conductance:
        raise ValueError("operator identities hold for unit conductance only")

    n = tree.branching
    letters = range(1, n + 1)
    worst = dict.fromkeys(IDENTITY_NAMES, 0.0)

    def record(name: str, lhs: NDArray, rhs: NDArray) -> None:
        worst[name] = max(worst[name], float(np.max(np.abs(lhs - rhs))))

    interior = range(int(tree.level_offsets[tree.depth - 1]))
    for idx in interior:
        delta = np.zeros(tree.vertex_count)
        delta[idx] = 1.0
        p_root = project_root(tree, delta)
        s = {i: apply_S(tree, delta, i) for i in letters}
        s_adj = {i: apply_S_adjoint(tree, delta, i) for i in letters}
        sum_s = sum(s.values())
        sum_s_adj = sum(s_adj.values())
        u = apply_U(tree, delta)
        u_adj = apply_U_adjoint(tree, delta)
        lap = apply_laplacian(tree, delta)

        for i in letters:
            record("s_i_s_i_adjoint", apply_S(tree, s_adj[i], i), delta)
            for j in letters:
                if j != i:
                    record("cuntz_orthogonality", apply_S(tree, s_adj[j], i), 0.0 * delta)
        record(
            "sum_s_adjoint_s",
            sum(apply_S_adjoint(tree, s[i], i) for i in letters),
            delta - p_root,
        )
        record("u_adjoint", u_adj, sum_s + p_root)
        record("laplacian_u", lap, (n + 1) * delta - (u + u_adj - p_root))
        record("laplacian_shifts", lap, (n + 1) * delta - (sum_s + sum_s_adj + p_root))

    logger.debug("operator identities N=%d D=%d: %s", n, tree.depth, worst)
    return worst


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    """Symmetric tridiagonal matrix given by its diagonal and off-diagonal."""

    diagonal: NDArray[np.float64]
    off_diagonal: NDArray[np.float64]
    label: str = ""

    def __post_init__(self) -> None:
        d = np.array(self.diagonal, dtype=np.float64)
        e = np.array(self.off_diagonal, dtype=np.float64)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("Jacobi matrix needs a non-empty diagonal")
        if e.shape != (d.size - 1,):
            raise ValueError(f"off-diagonal must have length {d.size - 1}, got {e.size}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("Jacobi matrix entries must be finite")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def size(self) -> int:
        return int(self.diagonal.size)

    def apply(self, v: ArrayLike) -> NDArray:
        v = np.asarray(v)
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def to_dense(self) -> NDArray[np.float64]:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )

    def eigh(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Eigenvalues (ascending) and eigenvectors as columns.

        Raises:
            RuntimeError: If LAPACK fails to converge.
        """
        if self.size == 1:
            return self.diagonal.copy(), np.ones((1, 1))
        try:
            return scipy.linalg.eigh_tridiagonal(self.diagonal, self.off_diagonal)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
            raise RuntimeError(f"eigen-solve failed for {self.label or 'Jacobi matrix'}") from exc


def _check_size(size: int) -> None:
    if size < 1:
        raise ValueError(f"Jacobi matrix size must be >= 1, got {size}")


def jacobi_D_omega(branching: int, size: int) -> JacobiMatrix:
    """The root block ``(N+1)I - 2√N Re S - P_{δ0}``: diag (N, N+1, ...), off -√N."""
    _check_size(size)
    diag = np.full(size, branching + 1.0)
    diag[0] = branching
    return JacobiMatrix(diag, np.full(size - 1, -np.sqrt(branching)), label="D_omega")


def jacobi_D(branching: int, size: int) -> JacobiMatrix:
    """The label blocks ``(N+1)I - 2√N Re S``: diag N+1, off -√N."""
    _check_size(size)
    return JacobiMatrix(
        np.full(size, branching + 1.0), np.full(size - 1, -np.sqrt(branching)), label="D"
    )


def jacobi_re_shift(size: int) -> JacobiMatrix:
    """Real part of the unilateral shift: diag 0, off-diagonal 1/2."""
    _check_size(size)
    return JacobiMatrix(np.zeros(size), np.full(size - 1, 0.5), label="Re S")


def jacobi_perturbed_shift(branching: int, size: int) -> JacobiMatrix:
    """``Re S + α P_{δ0}`` with ``α = 1/(2√N)``; its δ_0 measure is μ_{c+p}."""
    _check_size(size)
    diag = np.zeros(size)
    diag[0] = 1.0 / (2.0 * np.sqrt(branching))
    return JacobiMatrix(diag, np.full(size - 1, 0.5), label="Re S + alpha P")


def jacobi_moment(matrix: JacobiMatrix, n: int) -> float:
    """``<δ_0, J^n δ_0>`` by repeated application.

    A size-M truncation reproduces the infinite matrix exactly while a closed
    path of length n stays within the first ``n // 2 + 1`` indices.

    Raises:
        ValueError: If ``n < 0`` or the truncation is too small for order n.
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0, got {n}")
    if n // 2 > matrix.size - 1:
        raise ValueError(
            f"size {matrix.size} is too small for moment order {n}: "
            f"need size >= {n // 2 + 1}"
        )
    v = np.zeros(matrix.size)
    v[0] = 1.0
    for _ in range(n):
        v = matrix.apply(v)
    return float(v[0])
