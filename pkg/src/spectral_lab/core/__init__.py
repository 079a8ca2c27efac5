"""Core building blocks: tree and lattice graphs, tree operators, configuration."""

from __future__ import annotations

from .config import VerifyConfig, threads_from_env
from .graph import (
    ROOT,
    LatticeTorus,
    TruncatedTree,
    Word,
    children,
    common_prefix_len,
    format_word,
    parent,
    parse_word,
    tree_path_length,
)
from .operators import (
    JacobiMatrix,
    apply_laplacian,
    apply_S,
    apply_S_adjoint,
    apply_transition,
    apply_U,
    apply_U_adjoint,
    jacobi_D,
    jacobi_D_omega,
    jacobi_moment,
    jacobi_perturbed_shift,
    jacobi_re_shift,
    laplacian_matrix,
    verify_operator_identities,
)

__all__ = [
    "ROOT",
    "JacobiMatrix",
    "LatticeTorus",
    "TruncatedTree",
    "VerifyConfig",
    "Word",
    "apply_S",
    "apply_S_adjoint",
    "apply_U",
    "apply_U_adjoint",
    "apply_laplacian",
    "apply_transition",
    "children",
    "common_prefix_len",
    "format_word",
    "jacobi_D",
    "jacobi_D_omega",
    "jacobi_moment",
    "jacobi_perturbed_shift",
    "jacobi_re_shift",
    "laplacian_matrix",
    "parent",
    "parse_word",
    "threads_from_env",
    "tree_path_length",
    "verify_operator_identities",
]
