"""Bounded, infinite-energy eigenvectors of the half-line Laplacian (N = 1).

On the half-line ``(Δv)_0 = v_0 - v_1`` and ``(Δv)_k = 2v_k - v_{k-1} - v_{k+1}``.
Fixing ``v_0 = 1``, the eigen-equation forces ``v_1 = 1 - λ`` and
``v_{k+1} = (2 - λ) v_k - v_{k-1}``, so ``v_n = p_n(λ)`` for a degree-n
polynomial p_n. Any λ in [0, 4] gives a bounded solution; it is never in l².
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.polynomial.polynomial as npoly
from numpy.typing import NDArray

logger = logging.getLogger(__name__)

PERIOD_TOLERANCE = 1e-9
MIN_PERIOD_LENGTH = 20
ROOT_IMAG_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CharPoly:
    """``p_n`` with exact integer coefficients, lowest degree first."""

    degree: int
    coefficients: tuple[int, ...]

    def __call__(self, lam: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        return npoly.polyval(lam, np.array(self.coefficients, dtype=np.float64))

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if power == 0 else ("λ" if power == 1 else f"λ^{power}")
            if power and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(f" {s} {b}" for s, b in terms[1:])


def _times_two_minus_lambda(coeffs: list[int]) -> list[int]:
    out = [2 * c for c in coeffs] + [0]
    for power, c in enumerate(coeffs):
        out[power + 1] -= c
    return out


@lru_cache(maxsize=256)
def _coefficients(n: int) -> tuple[int, ...]:
    prev, cur = [1], [1, -1]
    for _ in range(n - 1):
        nxt = _times_two_minus_lambda(cur)
        for power, c in enumerate(prev):
            nxt[power] -= c
        prev, cur = cur, nxt
    return tuple(cur)


def char_poly(n: int) -> CharPoly:
    """``p_n`` from ``p_0 = 1``, ``p_1 = 1 - λ``, ``p_{k+1} = (2-λ)p_k - p_{k-1}``."""
    if n < 1:
        raise ValueError(f"polynomial index must be >= 1, got {n}")
    return CharPoly(n, _coefficients(n))


def char_poly_sequence(n: int) -> list[CharPoly]:
    return [char_poly(k) for k in range(1, n + 1)]


def char_poly_roots(n: int) -> NDArray[np.float64]:
    """Roots of p_n from the companion matrix, ascending.

    Raises:
        RuntimeError: If a root has a non-negligible imaginary part.
    """
    roots = npoly.polyroots(np.array(char_poly(n).coefficients, dtype=np.float64))
    if np.any(np.abs(np.imag(roots)) > ROOT_IMAG_TOLERANCE):
        raise RuntimeError(f"p_{n} has non-real roots: {roots}")
    return np.sort(np.real(roots))


def char_poly_roots_closed_form(n: int) -> NDArray[np.float64]:
    """``2 - 2cos((2k-1)π/(2n+1))``, k = 1..n.

    With ``λ = 2 - 2cos θ`` one has ``p_n(λ) = cos((n+½)θ) / cos(θ/2)``.
    """
    if n < 1:
        raise ValueError(f"polynomial index must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    return np.sort(2.0 - 2.0 * np.cos((2 * k - 1) * np.pi / (2 * n + 1)))


def consecutive_resultant(n: int) -> float:
    """Resultant of p_n and p_{n+1}, the determinant of their Sylvester matrix.

    Both have integer coefficients, so a common root would force 0 and
    otherwise ``|res| >= 1``.
    """
    a = char_poly(n).coefficients[::-1]
    b = char_poly(n + 1).coefficients[::-1]
    da, db = len(a) - 1, len(b) - 1
    size = da + db
    sylvester = np.zeros((size, size))
    for row in range(db):
        sylvester[row, row : row + da + 1] = a
    for row in range(da):
        sylvester[db + row, row : row + db + 1] = b
    return float(np.linalg.det(sylvester))


def golden_eigenvalues() -> tuple[float, float]:
    """The roots ``(3 ± √5) / 2`` of p_2, larger first."""
    root5 = math.sqrt(5.0)
    return (3.0 + root5) / 2.0, (3.0 - root5) / 2.0


@dataclass(frozen=True, eq=False)
class EigenSequence:
    """``v_0 .. v_L`` for eigenvalue λ."""

    eigenvalue: float
    values: NDArray[np.float64]

    @property
    def length(self) -> int:
        return int(self.values.size) - 1


def eigvec_generate(lam: float, length: int) -> EigenSequence:
    """Run the three-term recursion from ``v_0 = 1`` for ``length`` steps."""
    if length < 2:
        raise ValueError(f"sequence length must be >= 2, got {length}")
    v = np.empty(length + 1)
    v[0] = 1.0
    v[1] = 1.0 - lam
    for k in range(1, length):
        v[k + 1] = (2.0 - lam) * v[k] - v[k - 1]
    v.setflags(write=False)
    return EigenSequence(float(lam), v)


def half_line_laplacian(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """``(Δv)_k`` for k = 0..L-1 (the last entry needs v_{L+1})."""
    v = np.asarray(values, dtype=np.float64)
    out = np.empty(v.size - 1)
    out[0] = v[0] - v[1]
    out[1:] = 2.0 * v[1:-1] - v[:-2] - v[2:]
    return out


def eigen_residual(seq: EigenSequence) -> float:
    """``max_{k <= L-1} |(Δv)_k - λ v_k|``."""
    lap = half_line_laplacian(seq.values)
    return float(np.max(np.abs(lap - seq.eigenvalue * seq.values[:-1])))


def detect_period(seq: EigenSequence, tolerance: float = PERIOD_TOLERANCE) -> int | None:
    """Smallest q <= L/2 with ``max |v_{k+q} - v_k| <= tolerance``, or None.

    Raises:
        ValueError: If the sequence is shorter than ``MIN_PERIOD_LENGTH``.
    """
    length = seq.length
    if length < MIN_PERIOD_LENGTH:
        raise ValueError(f"period detection needs L >= {MIN_PERIOD_LENGTH}, got {length}")
    v = seq.values
    for q in range(1, length // 2 + 1):
        if np.max(np.abs(v[q:] - v[:-q])) <= tolerance:
            return q
    return None


def energy_partial_sums(seq: EigenSequence) -> NDArray[np.float64]:
    """``Σ_{k<=j} v_k²`` for j = 0..L."""
    return np.cumsum(seq.values**2)


def parse_eigenvalue(text: str) -> float:
    """``golden-`` / ``golden+`` or a plain number."""
    key = text.strip().lower()
    plus, minus = golden_eigenvalues()
    if key == "golden+":
        return plus
    if key in ("golden-", "golden"):
        return minus
    try:
        return float(key)
    except ValueError as exc:
        raise ValueError(f"eigenvalue must be a number, golden- or golden+, got {text!r}") from exc
