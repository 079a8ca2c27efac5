"""spectral_lab - Spectral theory of graph Laplacians on N-ary trees and lattices."""

from __future__ import annotations

# Core (generic)
from .core import (
    JacobiMatrix,
    LatticeTorus,
    TruncatedTree,
    VerifyConfig,
    apply_laplacian,
    jacobi_D,
    jacobi_D_omega,
    jacobi_moment,
)

# Analytic subjects
from .spectral import (
    aronszajn_krein,
    borel_mu_c,
    catalan,
    dft_verify,
    eigvec_generate,
    mu_cp_density,
    path_count,
    perturbed_measure,
    potential,
    resistance_dist,
    semicircle_measure,
    truncated_spectral_measure,
    walk_simulate,
)

# Validation
from .validation import SUITES, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "SUITES",
    "JacobiMatrix",
    "LatticeTorus",
    "TruncatedTree",
    "VerificationReport",
    "VerifyConfig",
    "__version__",
    "apply_laplacian",
    "aronszajn_krein",
    "borel_mu_c",
    "catalan",
    "dft_verify",
    "eigvec_generate",
    "jacobi_D",
    "jacobi_D_omega",
    "jacobi_moment",
    "mu_cp_density",
    "path_count",
    "perturbed_measure",
    "potential",
    "resistance_dist",
    "run_suite",
    "semicircle_measure",
    "truncated_spectral_measure",
    "walk_simulate",
]
