"""Exact integer/rational primitives and shared numerical utilities.

Everything in this module is either bit-exact (integer and rational
combinatorics) or carries an explicit tolerance (quadrature, Hermite
evaluation in float64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

# Exact rational scalar used throughout the package.  fractions.Fraction
# already guarantees canonical form: lowest terms, positive denominator.
Rational = Fraction

# Adaptive Simpson gives up once the interval has been split into more
# panels than this.
SIMPSON_PANEL_BUDGET = 2**20


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature exhausts its subdivision budget."""


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double_factorial requires n >= -1, got {n}")
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def catalan(l: int) -> int:
    """l-th Catalan number binom(2l, l) / (l + 1)."""
    return binomial(2 * l, l) // (l + 1)


@dataclass(frozen=True, slots=True)
class PartitionTerm:
    """Multiplicity assignment {k_q} with only the nonzero entries stored.

    A term generated for parameters (l, g) satisfies sum_q q*k_q = g and
    sum_q k_q = l - 2g + 1.
    """

    multiplicities: tuple[tuple[int, int], ...]  # sorted (q, k_q), k_q > 0

    def multiplicity(self, q: int) -> int:
        for qq, k in self.multiplicities:
            if qq == q:
                return k
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.multiplicities)

    @property
    def weighted_total(self) -> int:
        """sum_q q * k_q (the genus this term accounts for)."""
        return sum(q * k for q, k in self.multiplicities)

    @property
    def part_total(self) -> int:
        """sum_q k_q."""
        return sum(k for _, k in self.multiplicities)


def enumerate_partition_terms(l: int, g: int) -> Iterator[PartitionTerm]:
    """All {k_q} with sum q*k_q = g and sum k_q = l - 2g + 1, each once.

    Enumerates k_q for q = 1..g (q > g is impossible since q*k_q <= g),
    then fixes k_0 = l - 2g + 1 - sum_{q>=1} k_q, dropping assignments
    that would force k_0 < 0.
    """
    if l < 1:
        raise ValueError(f"enumerate_partition_terms requires l >= 1, got {l}")
    if g < 0:
        raise ValueError(f"enumerate_partition_terms requires g >= 0, got {g}")
    budget = l - 2 * g + 1
    if budget < 0:
        return

    def assign(q: int, weight_left: int, parts: list[tuple[int, int]]) -> Iterator[PartitionTerm]:
        if q > g or weight_left == 0:
            if weight_left != 0:
                return
            k0 = budget - sum(k for _, k in parts)
            if k0 < 0:
                return
            entries = ([(0, k0)] if k0 > 0 else []) + parts
            yield PartitionTerm(tuple(entries))
            return
        for k in range(weight_left // q + 1):
            yield from assign(q + 1, weight_left - q * k, parts + ([(q, k)] if k else []))

    yield from assign(1, g, [])


def partition_term_sum(l: int, g: int) -> Rational:
    """sum over PartitionTerm(l, g) of prod_q 1 / (k_q! (2q+1)^k_q)."""
    total = Fraction(0)
    for term in enumerate_partition_terms(l, g):
        w = Fraction(1)
        for q, k in term.multiplicities:
            w /= math.factorial(k) * (2 * q + 1) ** k
        total += w
    return total


def hermite_eval(n: int, x: float) -> float:
    """Probabilists' Hermite polynomial He_n(x) by three-term recurrence."""
    if n < 0:
        raise ValueError(f"hermite_eval requires n >= 0, got {n}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, float(x)
    for m in range(1, n):
        prev, cur = cur, x * cur - m * prev
    return cur


# Fixed first-stage split; guards against false convergence when the three
# whole-interval probes all land where the integrand is negligible.
SIMPSON_INITIAL_PANELS = 16


def integrate_real(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Adaptive composite Simpson integral of f over [a, b].

    The interval is first cut into SIMPSON_INITIAL_PANELS equal panels,
    each refined adaptively against its share of the absolute error
    target tol; raises QuadratureError once the panel budget is spent.
    """
    if not a < b:
        raise ValueError(f"integrate_real requires a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError(f"integrate_real requires tol > 0, got {tol}")

    panels = [SIMPSON_INITIAL_PANELS]  # mutable counter shared by the recursion

    def simpson(x0: float, x2: float, f0: float, f1: float, f2: float) -> float:
        return (x2 - x0) * (f0 + 4.0 * f1 + f2) / 6.0

    def recurse(x0: float, x2: float, f0: float, f1: float, f2: float,
                whole: float, eps: float) -> float:
        xm = 0.5 * (x0 + x2)
        xl = 0.5 * (x0 + xm)
        xr = 0.5 * (xm + x2)
        fl = f(xl)
        fr = f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        panels[0] += 2
        if panels[0] > SIMPSON_PANEL_BUDGET:
            raise QuadratureError(
                f"adaptive Simpson exceeded {SIMPSON_PANEL_BUDGET} panels on [{a}, {b}]"
            )
        half = 0.5 * eps
        return (recurse(x0, xm, f0, fl, f1, left, half)
                + recurse(xm, x2, f1, fr, f2, right, half))

    total = 0.0
    step = (b - a) / SIMPSON_INITIAL_PANELS
    eps = tol / SIMPSON_INITIAL_PANELS
    for k in range(SIMPSON_INITIAL_PANELS):
        x0 = a + k * step
        x2 = a + (k + 1) * step if k + 1 < SIMPSON_INITIAL_PANELS else b
        xm = 0.5 * (x0 + x2)
        f0, f1, f2 = f(x0), f(xm), f(x2)
        total += recurse(x0, x2, f0, f1, f2, simpson(x0, x2, f0, f1, f2), eps)
    return total


def integrate_complex(f: Callable[[float], complex], a: float, b: float, tol: float) -> complex:
    """Componentwise adaptive Simpson for a complex-valued integrand."""
    re = integrate_real(lambda x: f(x).real, a, b, tol)
    im = integrate_real(lambda x: f(x).imag, a, b, tol)
    return complex(re, im)
