"""The semicircle measure μ_c, the perturbed measure μ_{c+p} and their transforms.

μ_c has density ``(2/π)√(1-x²)`` on [-1, 1]. μ_{c+p} is the δ_∅ spectral
measure of the rescaled, rank-one perturbed shift; its density is μ_c's divided
by ``1 - 2x/√N + 1/N``. Integrals against either measure use Gauss–Chebyshev
quadrature of the second kind, built once per node count and shared read-only.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.integrate
import scipy.special
from numpy.typing import ArrayLike, NDArray

from ..core.config import DEFAULT_QUADRATURE_NODES

logger = logging.getLogger(__name__)

RealFunction = Callable[[NDArray[np.float64]], NDArray]

CATALAN_MAX_N = 2000
INT64_EXACT_MAX_N = 33
SERIES_TERMS = 60
DEFAULT_BOUNDARY_EPS = 1e-6
POLE_TOLERANCE = 1e-14
EDGE_RTOL = 1e-12


# --------------------------------------------------------------------------- #
# Catalan numbers
# --------------------------------------------------------------------------- #


def catalan(n: int, *, limit: int | None = CATALAN_MAX_N) -> int:
    """C_n = binomial(2n, n) / (n + 1), exact.

    Raises:
        ValueError: If ``n < 0``.
        OverflowError: If ``n`` exceeds ``limit``.
    """
    if n < 0:
        raise ValueError(f"Catalan index must be >= 0, got {n}")
    if limit is not None and n > limit:
        raise OverflowError(f"Catalan index {n} exceeds the cap {limit}")
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class CatalanTable:
    """Catalan numbers C_0..C_max built by the convolution recursion.

    Python integers are unbounded, so entries past ``INT64_EXACT_MAX_N`` stay
    exact; `int64_exact` reports whether a value also fits a signed 64-bit word.
    """

    values: tuple[int, ...]

    @classmethod
    def build(cls, max_n: int) -> CatalanTable:
        if max_n < 0:
            raise ValueError(f"max_n must be >= 0, got {max_n}")
        if max_n > CATALAN_MAX_N:
            raise OverflowError(f"Catalan table size {max_n} exceeds the cap {CATALAN_MAX_N}")
        values = [1]
        for k in range(max_n):
            values.append(sum(values[n] * values[k - n] for n in range(k + 1)))
        return cls(tuple(values))

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def closed_form_agrees(self) -> bool:
        return all(c == catalan(n) for n, c in enumerate(self.values))

    @staticmethod
    def int64_exact(n: int) -> bool:
        return 0 <= n <= INT64_EXACT_MAX_N


@lru_cache(maxsize=8)
def catalan_table(max_n: int) -> CatalanTable:
    return CatalanTable.build(max_n)


def catalan_gf(x: float) -> float:
    """Closed-form generating function ``(1 - √(1-4x)) / (2x)``, filled at x = 0.

    Written as ``2 / (1 + √(1-4x))``, which has no removable singularity.

    Raises:
        ValueError: If ``x > 1/4`` (the square root leaves the reals).
    """
    if x > 0.25:
        raise ValueError(f"generating function is real only for x <= 1/4, got {x}")
    return 2.0 / (1.0 + math.sqrt(1.0 - 4.0 * x))


def catalan_gf_series(x: float, terms: int = SERIES_TERMS) -> float:
    """Partial sum ``Σ_{n<terms} C_n xⁿ``.

    Raises:
        ValueError: If ``|x| >= 1/4``, where the series does not converge.
    """
    if abs(x) >= 0.25:
        raise ValueError(f"Catalan series needs |x| < 1/4, got {x}")
    table = catalan_table(terms - 1)
    return float(sum(float(c) * x**n for n, c in enumerate(table.values)))


# --------------------------------------------------------------------------- #
# Moments
# --------------------------------------------------------------------------- #


def mu_c_moment(n: int) -> Fraction:
    """``∫ xⁿ dμ_c``: ``C_{n/2} / 2ⁿ`` for even n, 0 for odd n."""
    if n < 0:
        raise ValueError(f"moment order must be >= 0, got {n}")
    if n % 2:
        return Fraction(0)
    return Fraction(catalan(n // 2), 2**n)


def scaled_moment(radius: float, k: int) -> float:
    """Even moment ``(R/2)^{2k} C_k`` of the semicircle law of radius R."""
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return float((radius / 2.0) ** (2 * k) * catalan(k))


def scaled_moment_quadrature(radius: float, k: int, nodes: int = DEFAULT_QUADRATURE_NODES) -> float:
    """Same moment by quadrature: substitute ``x = R y`` into the μ_c rule."""
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    return radius ** (2 * k) * semicircle_measure(nodes).moment(2 * k)


# --------------------------------------------------------------------------- #
# Quadrature and measures
# --------------------------------------------------------------------------- #


@lru_cache(maxsize=16)
def chebyshev_u_rule(nodes: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Gauss–Chebyshev second-kind rule normalised to μ_c.

    Nodes are ``cos(jπ/(K+1))``; weights sum to 1. Exact for polynomials of
    degree ``<= 2K - 1``. The returned arrays are read-only and shared.
    """
    if nodes < 1:
        raise ValueError(f"quadrature needs >= 1 node, got {nodes}")
    x, w = scipy.special.roots_chebyu(nodes)
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64) * (2.0 / np.pi)
    x.setflags(write=False)
    w.setflags(write=False)
    logger.debug("built Chebyshev-U rule with %d nodes", nodes)
    return x, w


def principal_sqrt(w: ArrayLike) -> NDArray[np.complex128]:
    """Square root with its branch cut on (-∞, 0], by real/imaginary parts.

    ``√(x+iy) = √((|w|+x)/2) + i·sgn(y)·√((|w|-x)/2)``; on the cut itself
    (y = 0, x < 0) the upper-half-plane limit ``i√(-x)`` is returned.
    """
    w = np.asarray(w, dtype=np.complex128)
    x, y = w.real, w.imag
    modulus = np.abs(w)
    re = np.sqrt(np.maximum((modulus + x) / 2.0, 0.0))
    im = np.sqrt(np.maximum((modulus - x) / 2.0, 0.0))
    sign = np.where(y < 0, -1.0, 1.0)
    return re + 1j * sign * im


def _perturbation_ratio(branching: int) -> RealFunction:
    """``1 / (1 - 2x/√N + 1/N)``, written as ``1 / ((1 - rx)² + r²(1 - x²))``."""
    r = 1.0 / math.sqrt(branching)

    def ratio(x: NDArray[np.float64]) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        return 1.0 / ((1.0 - r * x) ** 2 + r * r * (1.0 - x * x))

    return ratio


def _perturbation_angular(branching: int) -> Callable[[float], float]:
    """Density of μ_{c+p} in ``x = cos θ`` coordinates, smooth on [0, π]."""
    if branching == 1:
        return lambda theta: (1.0 + math.cos(theta)) / math.pi
    r = 1.0 / math.sqrt(branching)
    return lambda theta: (
        (2.0 / math.pi) * math.sin(theta) ** 2 / (1.0 - 2.0 * r * math.cos(theta) + r * r)
    )


def mu_c_density(x: ArrayLike) -> NDArray[np.float64]:
    arr = _check_support(x)
    return _like_input(x, (2.0 / np.pi) * np.sqrt(np.clip(1.0 - arr * arr, 0.0, None)))


def mu_cp_density(x: ArrayLike, branching: int) -> NDArray[np.float64]:
    """``(2/π)√(1-x²) / (1 - 2x/√N + 1/N)`` on [-1, 1].

    For N = 1 the density blows up like ``(1-x)^{-1/2}`` at x = 1; the
    endpoints are assigned density 0, matching the open-interval support.
    """
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    arr = _check_support(x)
    interior = np.abs(arr) < 1.0
    out = np.zeros_like(arr)
    out[interior] = mu_c_density(arr[interior]) * _perturbation_ratio(branching)(arr[interior])
    return _like_input(x, out)


def _check_support(x: ArrayLike) -> NDArray[np.float64]:
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(np.abs(arr) > 1.0) or not np.all(np.isfinite(arr)):
        raise ValueError("density arguments must lie in [-1, 1]")
    return arr


def _like_input(x: ArrayLike, out: NDArray[np.float64]) -> NDArray[np.float64]:
    """Scalars in, scalars out."""
    if np.ndim(x) == 0:
        return out.reshape(())[()]
    return out


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """An absolutely continuous probability measure on [-1, 1].

    Attributes:
        label: Short name, ``"c"`` or ``"c+p"``.
        density: Lebesgue density on [-1, 1].
        angular_density: Density of the pushed-forward measure in ``θ`` with
            ``x = cos θ``; smooth on [0, π] and used for the distribution function.
        nodes: Quadrature nodes.
        weights: Quadrature weights; ``Σ w f(x)`` approximates ``∫ f dμ``.
    """

    label: str
    density: Callable[[ArrayLike], NDArray[np.float64]]
    angular_density: Callable[[float], float]
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]

    def integrate(self, f: Callable[[NDArray[np.float64]], ArrayLike]) -> complex | float:
        values = np.asarray(f(self.nodes))
        total = np.dot(self.weights, values)
        return complex(total) if np.iscomplexobj(total) else float(total)

    def moment(self, n: int) -> float:
        if n < 0:
            raise ValueError(f"moment order must be >= 0, got {n}")
        return float(self.integrate(lambda x: x**n))

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def cdf(self, t: float) -> float:
        """``μ([-1, t])`` by adaptive integration in the angle variable."""
        if t <= -1.0:
            return 0.0
        if t >= 1.0:
            return 1.0
        value, _ = scipy.integrate.quad(self.angular_density, math.acos(t), math.pi, limit=200)
        return float(value)


@lru_cache(maxsize=8)
def semicircle_measure(nodes: int = DEFAULT_QUADRATURE_NODES) -> SpectralMeasure:
    x, w = chebyshev_u_rule(nodes)
    return SpectralMeasure(
        label="c",
        density=mu_c_density,
        angular_density=lambda theta: (2.0 / math.pi) * math.sin(theta) ** 2,
        nodes=x,
        weights=w,
    )


@lru_cache(maxsize=32)
def perturbed_measure(branching: int, nodes: int = DEFAULT_QUADRATURE_NODES) -> SpectralMeasure:
    """μ_{c+p} with its quadrature rule.

    The μ_c rule is reweighted by the density ratio. For N = 1 the angular
    density does not vanish at θ = 0, so the endpoint x = 1 carries the
    trapezoidal end weight ``1/(K+1)``; with it the rule stays exact for
    polynomials of degree ``<= 2K``.
    """
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    x, w = chebyshev_u_rule(nodes)
    weights = w * _perturbation_ratio(branching)(x)
    if branching == 1:
        x = np.concatenate([[1.0], x])
        weights = np.concatenate([[1.0 / (nodes + 1)], weights])
    x = np.array(x)
    x.setflags(write=False)
    weights.setflags(write=False)
    return SpectralMeasure(
        label="c+p",
        density=lambda t: mu_cp_density(t, branching),
        angular_density=_perturbation_angular(branching),
        nodes=x,
        weights=weights,
    )


# --------------------------------------------------------------------------- #
# Borel transforms
# --------------------------------------------------------------------------- #


def _as_complex(z: complex | ArrayLike) -> NDArray[np.complex128]:
    arr = np.asarray(z, dtype=np.complex128)
    on_cut = (arr.imag == 0) & (np.abs(arr.real) <= 1.0)
    if np.any(on_cut):
        raise ValueError("Borel transform is undefined on [-1, 1]")
    return arr


def _scalar_or_array(value: NDArray[np.complex128]) -> complex | NDArray[np.complex128]:
    return complex(value) if value.ndim == 0 else value


def borel_mu_c(z: complex | ArrayLike) -> complex | NDArray[np.complex128]:
    """``F(z) = ∫ dμ_c(x) / (x - z) = -2z(1 - √(1 - 1/z²))`` off [-1, 1].

    Evaluated as ``-2 / (z + z√(1 - 1/z²))``, which avoids cancellation for
    large |z|.

    Raises:
        ValueError: If any z lies on [-1, 1].
    """
    z = _as_complex(z)
    root = z * principal_sqrt(1.0 - 1.0 / (z * z))
    return _scalar_or_array(-2.0 / (z + root))


def borel_transform_quadrature(
    measure: SpectralMeasure, z: complex
) -> complex:
    """``∫ dμ(x) / (x - z)`` by the measure's quadrature rule."""
    _as_complex(z)
    return complex(measure.integrate(lambda x: 1.0 / (x - z)))


def mu_c_moment_series(z: complex, terms: int = SERIES_TERMS) -> complex:
    """Moment expansion ``-Σ_{k<terms} C_k / (4z²)^k / z``, valid for |z| > 1."""
    if abs(z) <= 1.0:
        raise ValueError(f"moment series needs |z| > 1, got |z|={abs(z)}")
    table = catalan_table(terms - 1)
    q = 1.0 / (4.0 * z * z)
    return -sum(complex(c) * q**k for k, c in enumerate(table.values)) / z


def perturbation_alpha(branching: int) -> float:
    """The rank-one coupling ``α = 1/(2√N)``."""
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    return 1.0 / (2.0 * math.sqrt(branching))


def aronszajn_krein(z: complex, alpha: float) -> complex:
    """``F_α = F / (1 + αF)`` for the rank-one perturbation ``A + α P_{δ0}``.

    Raises:
        ValueError: If z lies on [-1, 1] or ``1 + αF(z)`` vanishes.
    """
    f = complex(borel_mu_c(z))
    denom = 1.0 + alpha * f
    if abs(denom) < POLE_TOLERANCE:
        raise ValueError(f"pole of the perturbed transform at z={z} (1 + αF = {denom})")
    return f / denom


def boundary_density(
    x: float,
    alpha: float,
    eps: float = DEFAULT_BOUNDARY_EPS,
    *,
    richardson: bool = False,
) -> float:
    """``(1/π) Im F_α(x + iε)``, the density recovered from the boundary values.

    With ``richardson`` the values at ε and ε/2 are combined to cancel the
    first-order term in ε.
    """
    if not -1.0 < x < 1.0:
        raise ValueError(f"boundary density needs x in (-1, 1), got {x}")
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")

    def at(e: float) -> float:
        return aronszajn_krein(complex(x, e), alpha).imag / math.pi

    coarse = at(eps)
    if not richardson:
        return coarse
    return 2.0 * at(eps / 2.0) - coarse


def boundary_density_limit(x: ArrayLike, alpha: float) -> NDArray[np.float64]:
    """The ε → 0 limit ``(2/π)√(1-x²) / (1 - 4αx + 4α²)``."""
    arr = _check_support(x)
    return _like_input(x, mu_c_density(arr) / (1.0 - 4.0 * alpha * arr + 4.0 * alpha * alpha))


# --------------------------------------------------------------------------- #
# Resolvent of A_Δ on L²(μ_c)
# --------------------------------------------------------------------------- #


def _check_outside(lam: float, branching: int, *, allow_edge: bool) -> bool:
    """Validate λ against ``[-2√N, 2√N]``; returns True when λ sits on an edge."""
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    edge = 2.0 * math.sqrt(branching)
    on_edge = math.isclose(abs(lam), edge, rel_tol=EDGE_RTOL)
    if on_edge and allow_edge:
        return True
    if abs(lam) <= edge or on_edge:
        raise ValueError(f"λ={lam} lies in the spectrum [-{edge}, {edge}]")
    return False


def i_lambda(lam: float, branching: int, nodes: int = DEFAULT_QUADRATURE_NODES) -> float:
    """``I_λ = ∫ dμ_c(x) / (λ - 2√N x)`` for ``|λ| >= 2√N``.

    At ``λ = ±2√N`` the integrand has a simple pole at an endpoint, cancelled by
    the vanishing density; the trapezoidal end term ``±1/((K+1)√N)`` restores
    the rule's exactness there.

    Raises:
        ValueError: If ``|λ| < 2√N``.
    """
    on_edge = _check_outside(lam, branching, allow_edge=True)
    root = math.sqrt(branching)
    x, w = chebyshev_u_rule(nodes)
    if on_edge:
        sign = 1.0 if lam > 0 else -1.0
        interior = float(np.dot(w, 1.0 / (sign * 2.0 * root - 2.0 * root * x)))
        return interior + sign / ((nodes + 1) * root)
    return float(np.dot(w, 1.0 / (lam - 2.0 * root * x)))


def apply_A_delta(
    f: RealFunction, branching: int, measure: SpectralMeasure | None = None
) -> RealFunction:
    """``A_Δ f = 2√N x f + E(f)`` with ``E(f) = ∫ f dμ_c``."""
    measure = measure or semicircle_measure()
    expectation = measure.integrate(f)
    root = math.sqrt(branching)
    return lambda x: 2.0 * root * np.asarray(x) * f(x) + expectation


def resolvent_A_delta(
    lam: float,
    g: RealFunction,
    branching: int,
    nodes: int = DEFAULT_QUADRATURE_NODES,
) -> RealFunction:
    """Solve ``(λ - A_Δ) f = g`` for ``|λ| > 2√N``.

    ``E(f) = E(g / d) / (1 - I_λ)`` and ``f = (g + E(f)) / d`` with
    ``d(x) = λ - 2√N x``.

    Raises:
        ValueError: If λ lies in ``[-2√N, 2√N]``.
    """
    _check_outside(lam, branching, allow_edge=False)
    measure = semicircle_measure(nodes)
    root = math.sqrt(branching)

    def divisor(x: NDArray[np.float64]) -> NDArray[np.float64]:
        return lam - 2.0 * root * np.asarray(x)

    i_val = float(measure.integrate(lambda x: 1.0 / divisor(x)))
    expectation = measure.integrate(lambda x: g(x) / divisor(x)) / (1.0 - i_val)
    logger.debug("resolvent λ=%g N=%d: I_λ=%.15g E(f)=%r", lam, branching, i_val, expectation)
    return lambda x: (g(x) + expectation) / divisor(x)


def resolvent_residual(
    lam: float,
    g: RealFunction,
    f: RealFunction,
    branching: int,
    nodes: int = DEFAULT_QUADRATURE_NODES,
) -> float:
    """``‖(λ - A_Δ) f - g‖`` in L²(μ_c), by quadrature."""
    measure = semicircle_measure(nodes)
    a_f = apply_A_delta(f, branching, measure)
    diff = lambda x: np.abs(lam * f(x) - a_f(x) - g(x)) ** 2  # noqa: E731
    return math.sqrt(max(float(measure.integrate(diff)), 0.0))


def spectrum_interval(branching: int) -> tuple[float, float]:
    """Spectrum ``[N+1-2√N, N+1+2√N]`` of the Laplacian on T̃."""
    if branching < 1:
        raise ValueError(f"branching must be >= 1, got {branching}")
    root = math.sqrt(branching)
    return (root - 1.0) ** 2, (root + 1.0) ** 2
