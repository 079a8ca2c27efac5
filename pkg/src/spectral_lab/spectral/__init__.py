"""Analytic subjects: measures, cyclic decomposition, resistance, walks, eigenvectors, lattices.

Architecture (one module per subject, as the validation suites):
- measures.py: μ_c, μ_{c+p}, Catalan numbers, Borel transforms, resolvent of A_Δ
- cyclic.py: cyclic basis on the truncated tree, truncated spectral measures
- resistance.py: potentials, energy form, resistance metric
- walks.py: closed-walk counts on T̃, Monte Carlo return frequency
- periodic.py: half-line eigenvectors and their characteristic polynomials
- lattice.py: torus Laplacian and its Fourier symbol
"""

from __future__ import annotations

from .cyclic import (
    CyclicBasisVector,
    CyclicLabel,
    DiscreteMeasure,
    cyclic_labels,
    cyclic_vector,
    kolmogorov_distance,
    max_weight_decay,
    orthobasis_with_s0,
    truncated_spectral_measure,
    verify_block_structure,
)
from .lattice import (
    apply_lattice_laplacian,
    apply_shift,
    dft_verify,
    lattice_eigenvalues_dense,
    symbol,
)
from .measures import (
    CatalanTable,
    SpectralMeasure,
    aronszajn_krein,
    borel_mu_c,
    boundary_density,
    catalan,
    catalan_gf,
    i_lambda,
    mu_c_moment,
    mu_cp_density,
    perturbed_measure,
    resolvent_A_delta,
    scaled_moment,
    semicircle_measure,
    spectrum_interval,
)
from .periodic import (
    EigenSequence,
    char_poly,
    detect_period,
    eigvec_generate,
    golden_eigenvalues,
)
from .resistance import (
    Potential,
    covariance,
    energy,
    independent_increments_check,
    neg_semidefinite_check,
    potential,
    resistance_dist,
)
from .walks import (
    WalkConfig,
    WalkCounter,
    moment_identity_check,
    path_count,
    return_probability_exact,
    walk_simulate,
)

__all__ = [
    "CatalanTable",
    "CyclicBasisVector",
    "CyclicLabel",
    "DiscreteMeasure",
    "EigenSequence",
    "Potential",
    "SpectralMeasure",
    "WalkConfig",
    "WalkCounter",
    "apply_lattice_laplacian",
    "apply_shift",
    "aronszajn_krein",
    "borel_mu_c",
    "boundary_density",
    "catalan",
    "catalan_gf",
    "char_poly",
    "covariance",
    "cyclic_labels",
    "cyclic_vector",
    "detect_period",
    "dft_verify",
    "eigvec_generate",
    "energy",
    "golden_eigenvalues",
    "i_lambda",
    "independent_increments_check",
    "kolmogorov_distance",
    "lattice_eigenvalues_dense",
    "max_weight_decay",
    "moment_identity_check",
    "mu_c_moment",
    "mu_cp_density",
    "neg_semidefinite_check",
    "orthobasis_with_s0",
    "path_count",
    "perturbed_measure",
    "potential",
    "resistance_dist",
    "resolvent_A_delta",
    "return_probability_exact",
    "scaled_moment",
    "semicircle_measure",
    "spectrum_interval",
    "symbol",
    "truncated_spectral_measure",
    "verify_block_structure",
    "walk_simulate",
]
