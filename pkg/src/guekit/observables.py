"""Exact finite-N GUE observables.

The Wilson loop expectation I(t, N), the eigenvalue density rho_N, the
resolvent omega_N and the even moments <Tr H^{2l}>/N are all carried by
one family of exact rational coefficients

    c_q = binom(N, q+1) / (N^{q+1} q!),   q = 0 .. N-1,

stored exactly and converted to float64 only at evaluation time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .exact import (
    Rational,
    binomial,
    integrate_complex,
    integrate_real,
    partition_term_sum,
)

# Fourier/Laplace integrals over t are truncated once the Gaussian factor
# times the (positive-coefficient) polynomial part drops below this.
TAIL_EPSILON = 1e-12

DEFAULT_RESOLVENT_NODES = 240


def _coefficient_ladder(N: int) -> tuple[Fraction, ...]:
    """Exact c_q = binom(N, q+1) / (N^{q+1} q!) for q = 0 .. N-1.

    Built by the ratio recurrence c_{q+1} = c_q (N-q-1) / (N (q+1)(q+2)),
    which keeps every intermediate gcd small even at N in the thousands.
    """
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for q in range(N - 1):
        c *= Fraction(N - q - 1, N * (q + 1) * (q + 2))
        coeffs.append(c)
    return tuple(coeffs)


@dataclass(frozen=True)
class GaussianPolynomial:
    """I(t, N) = exp(-t^2 / 2N) * sum_q c_q (-t^2)^q with exact c_q."""

    matrix_size: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.matrix_size < 1:
            raise ValueError(f"matrix size must be >= 1, got {self.matrix_size}")
        if len(self.coefficients) != self.matrix_size:
            raise ValueError("expected exactly N coefficients")
        if self.coefficients[0] != 1:
            raise ValueError("leading coefficient must be 1")

    @cached_property
    def float_coefficients(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coefficients)


@dataclass(frozen=True)
class DensityExpansion:
    """rho_N(lambda) = sqrt(N/2pi) e^{-N lambda^2/2} sum_q d_q N^q He_2q(sqrt(N) lambda)."""

    matrix_size: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.matrix_size < 1:
            raise ValueError(f"matrix size must be >= 1, got {self.matrix_size}")
        if len(self.coefficients) != self.matrix_size:
            raise ValueError("expected exactly N coefficients")
        if self.coefficients[0] != 1:
            raise ValueError("leading coefficient must be 1")

    @cached_property
    def hermite_weights(self) -> tuple[float, ...]:
        """float(d_q * N^q); the weight multiplying He_2q(sqrt(N) lambda)."""
        N = self.matrix_size
        return tuple(float(d * N**q) for q, d in enumerate(self.coefficients))


@dataclass(frozen=True)
class MomentTable:
    """Exact even moments m_2l = <Tr H^{2l}>/N for l = 0 .. l_max."""

    matrix_size: int
    values: tuple[Fraction, ...]


def wilson_loop(N: int) -> GaussianPolynomial:
    """Exact expectation of (1/N) Tr exp(itH) as a GaussianPolynomial."""
    if N < 1:
        raise ValueError(f"wilson_loop requires N >= 1, got {N}")
    return GaussianPolynomial(N, _coefficient_ladder(N))


def wilson_eval(w: GaussianPolynomial, t: complex) -> complex:
    """Float64 value of I(t, N) at complex t."""
    u = -(complex(t) ** 2)
    acc = 0.0 + 0.0j
    for c in reversed(w.float_coefficients):
        acc = acc * u + c
    return cmath.exp(u / (2 * w.matrix_size)) * acc


def wilson_taylor_coefficients(w: GaussianPolynomial, l_max: int) -> list[Rational]:
    """Exact coefficients of (-t^2)^l in I(t, N), l = 0 .. l_max.

    Multiplies the exp(-t^2/2N) series into the stored polynomial in
    rational arithmetic; entry l equals m_2l / (2l)!.
    """
    N = w.matrix_size
    out = []
    for l in range(l_max + 1):
        total = Fraction(0)
        for q in range(min(l, N - 1) + 1):
            total += w.coefficients[q] / (math.factorial(l - q) * (2 * N) ** (l - q))
        out.append(total)
    return out


def wilson_limit_partial(t: complex, q_max: int) -> complex:
    """Partial sum sum_{q<=q_max} (-t^2)^q / ((q+1)! q!) of the N->inf series."""
    if q_max < 0:
        raise ValueError(f"q_max must be >= 0, got {q_max}")
    u = -(complex(t) ** 2)
    term = 1.0 + 0.0j
    total = term
    for q in range(q_max):
        term *= u / ((q + 2) * (q + 1))
        total += term
    return total


def wilson_bound(N: int, t: complex) -> float:
    """Upper bound exp(-Re(t^2)/2N) * exp(2|t|) on |I(t, N)|."""
    if N < 1:
        raise ValueError(f"wilson_bound requires N >= 1, got {N}")
    t = complex(t)
    return math.exp(-(t * t).real / (2 * N)) * math.exp(2 * abs(t))


def density(N: int) -> DensityExpansion:
    """Exact eigenvalue density of the N x N GUE as a Hermite expansion."""
    if N < 1:
        raise ValueError(f"density requires N >= 1, got {N}")
    return DensityExpansion(N, _coefficient_ladder(N))


def density_eval(d: DensityExpansion, lam: float) -> float:
    """Float64 value of rho_N at lambda.

    One pass of the Hermite recurrence supplies every even order up to
    2(N-1); the Gaussian prefactor is applied last.
    """
    N = d.matrix_size
    x = math.sqrt(N) * lam
    weights = d.hermite_weights
    total = weights[0]
    prev, cur = 1.0, x  # He_0, He_1
    for m in range(1, 2 * (N - 1)):
        prev, cur = cur, x * cur - m * prev
        if (m + 1) % 2 == 0:
            q = (m + 1) // 2
            if q < N:
                total += weights[q] * cur
    return math.sqrt(N / (2 * math.pi)) * math.exp(-N * lam * lam / 2) * total


def wigner_density(lam: float) -> float:
    """Semicircle density (1/2pi) sqrt(4 - lambda^2) on [-2, 2]."""
    if abs(lam) >= 2.0:
        return 0.0
    return math.sqrt(4.0 - lam * lam) / (2.0 * math.pi)


def moment_exact(N: int, l: int) -> Rational:
    """Exact m_2l = sum_{q2} binom(N,q2+1)/(N^{q2+1} q2!) (2l)!/(2^{l-q2}(l-q2)!) N^{q2-l}."""
    if N < 1:
        raise ValueError(f"moment_exact requires N >= 1, got {N}")
    if l < 0:
        raise ValueError(f"moment_exact requires l >= 0, got {l}")
    total = Fraction(0)
    for q2 in range(min(l, N - 1) + 1):
        total += (
            Fraction(binomial(N, q2 + 1), N ** (q2 + 1) * math.factorial(q2))
            * Fraction(math.factorial(2 * l), 2 ** (l - q2) * math.factorial(l - q2))
            / N ** (l - q2)
        )
    return total


def moment_table(N: int, l_max: int) -> MomentTable:
    return MomentTable(N, tuple(moment_exact(N, l) for l in range(l_max + 1)))


def moment_genus_expansion(l: int, g_max: int | None = None) -> list[Rational]:
    """Coefficients of N^{-2g} in m_2l, g = 0 .. min(g_max, floor(l/2)).

    Entry g is (2l)!/l! 2^{-2g} * sum over multiplicity assignments of
    prod_q 1/(k_q! (2q+1)^k_q); all entries are non-negative rationals.
    """
    if l < 1:
        raise ValueError(f"moment_genus_expansion requires l >= 1, got {l}")
    top = l // 2 if g_max is None else min(g_max, l // 2)
    base = Fraction(math.factorial(2 * l), math.factorial(l))
    return [base / 4**g * partition_term_sum(l, g) for g in range(top + 1)]


def _poly_tail_magnitude(w: GaussianPolynomial, t: float) -> float:
    """exp(-t^2/2N) * sum_q c_q t^2q, an upper envelope for |I| on the reals."""
    u = t * t
    acc = 0.0
    for c in reversed(w.float_coefficients):
        acc = acc * u + c
    return math.exp(-u / (2 * w.matrix_size)) * acc


def truncation_time(w: GaussianPolynomial) -> float:
    """Smallest scanned T with the Gaussian-times-polynomial envelope < 1e-12."""
    N = w.matrix_size
    T = max(4.0, math.sqrt(2 * N * math.log(1.0 / TAIL_EPSILON)))
    while _poly_tail_magnitude(w, T) >= TAIL_EPSILON:
        T += 2.0
    return T


def resolvent_laplace(N: int, z: complex) -> complex:
    """omega_N(z) = integral_0^inf exp(-zt) I(t, N) dt by truncated quadrature."""
    z = complex(z)
    if z.real <= 0:
        raise ValueError(f"resolvent_laplace requires Re z > 0, got {z}")
    w = wilson_loop(N)
    T = truncation_time(w)
    return integrate_complex(lambda t: cmath.exp(-z * t) * wilson_eval(w, t), 0.0, T, 1e-10)


@lru_cache(maxsize=16)
def _gauss_hermite(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for weight exp(-x^2) by Golub-Welsch.

    Eigendecomposition of the Jacobi matrix stays stable for node counts
    where the classical weight formula (numpy's hermgauss) overflows.
    """
    off = np.sqrt(np.arange(1, n) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    vals, vecs = np.linalg.eigh(jacobi)
    weights = math.sqrt(math.pi) * vecs[0] ** 2
    vals.setflags(write=False)
    weights.setflags(write=False)
    return vals, weights


def resolvent_quadrature(N: int, z: complex, nodes: int = DEFAULT_RESOLVENT_NODES) -> complex:
    """omega_N(z) from the two-variable Gaussian integral representation.

    Gauss-Hermite product rule matched to the exp(-N x^2 / 2) weight in
    each variable; restricted to Re z >= 1 to keep the (z - iA) pole well
    away from the integration axis.
    """
    z = complex(z)
    if N < 1:
        raise ValueError(f"resolvent_quadrature requires N >= 1, got {N}")
    if z.real < 1:
        raise ValueError(f"resolvent_quadrature requires Re z >= 1, got {z}")
    if nodes < 2:
        raise ValueError(f"need at least 2 quadrature nodes, got {nodes}")
    x, gw = _gauss_hermite(nodes)
    scale = math.sqrt(2.0 / N)
    a = x * scale  # A nodes; D nodes are identical
    wts = gw / math.sqrt(math.pi)
    za = z - 1j * a
    zd = z - a
    term1 = np.outer(za ** -(N + 1), zd**N)
    term2 = (N + 1) / N * np.outer(za ** -(N + 2), zd ** (N - 1))
    return complex(wts @ (term1 + term2) @ wts)


def density_fourier_check(N: int, lam: float) -> float:
    """rho_N(lambda) recomputed as (1/2pi) integral of exp(-i lambda t) I(t, N).

    I(t, N) is even in t, so the integral reduces to the cosine transform
    over [0, T] with T from the Gaussian-decay truncation rule.
    """
    w = wilson_loop(N)
    T = truncation_time(w)
    val = integrate_real(
        lambda t: math.cos(lam * t) * wilson_eval(w, t).real, 0.0, T, 1e-11
    )
    return val / math.pi
