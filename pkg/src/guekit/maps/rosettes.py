"""Wick pairings on one vertex: rosette enumeration, genus census, counting.

A pairing of the 2l darts around a single vertex of coordination 2l is a
rooted rosette; its genus comes from tracing faces of the permutation
gamma o alpha, gamma the cyclic step i -> i+1 and alpha the pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from ..exact import Rational, double_factorial, partition_term_sum

# (2l-1)!! grows superexponentially; l = 8 already means 2,027,025 pairings.
PAIRING_BUDGET = 8


@dataclass(frozen=True, slots=True)
class Pairing:
    """Fixed-point-free involution on darts 0 .. 2l-1, partner[i] = j."""

    partner: tuple[int, ...]

    def __post_init__(self):
        n = len(self.partner)
        if n == 0 or n % 2:
            raise ValueError("pairing needs a positive even number of darts")
        for i, j in enumerate(self.partner):
            if not 0 <= j < n or j == i or self.partner[j] != i:
                raise ValueError(f"not a fixed-point-free involution at dart {i}")

    @property
    def edge_count(self) -> int:
        return len(self.partner) // 2


def _iter_partner_tuples(n: int) -> Iterator[tuple[int, ...]]:
    """All involution tables on n darts, lexicographic in pair choices."""
    partner = [-1] * n

    def rec(lo: int) -> Iterator[tuple[int, ...]]:
        while lo < n and partner[lo] >= 0:
            lo += 1
        if lo == n:
            yield tuple(partner)
            return
        for j in range(lo + 1, n):
            if partner[j] < 0:
                partner[lo], partner[j] = j, lo
                yield from rec(lo + 1)
                partner[lo] = partner[j] = -1

    yield from rec(0)


def enumerate_pairings(l: int) -> Iterator[Pairing]:
    """All (2l-1)!! pairings of 2l darts, in a fixed deterministic order."""
    if not 1 <= l <= PAIRING_BUDGET:
        raise ValueError(f"pairing enumeration supports 1 <= l <= {PAIRING_BUDGET}, got {l}")
    return (Pairing(partner) for partner in _iter_partner_tuples(2 * l))


def _face_count(partner: tuple[int, ...]) -> int:
    """Cycles of i -> partner[i] + 1 (mod 2l)."""
    n = len(partner)
    seen = [False] * n
    faces = 0
    for start in range(n):
        if seen[start]:
            continue
        faces += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = partner[i] + 1
            if i == n:
                i = 0
    return faces


def rosette_genus(p: Pairing) -> int:
    """Genus g with F = l + 1 - 2g faces around the single vertex."""
    l = p.edge_count
    faces = _face_count(p.partner)
    excess = l + 1 - faces
    assert excess >= 0 and excess % 2 == 0, f"Euler formula violated: l={l}, F={faces}"
    return excess // 2


@dataclass(frozen=True, slots=True)
class RosetteCensus:
    """counts[g] = number of genus-g rosettes with l edges."""

    l: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != double_factorial(2 * self.l - 1):
            raise ValueError(f"census total must be (2l-1)!! for l={self.l}")


@lru_cache(maxsize=None)
def rosette_census(l: int) -> RosetteCensus:
    """Genus histogram over every pairing of 2l darts (brute force)."""
    if not 1 <= l <= PAIRING_BUDGET:
        raise ValueError(f"census supports 1 <= l <= {PAIRING_BUDGET}, got {l}")
    counts = [0] * (l // 2 + 1)
    for partner in _iter_partner_tuples(2 * l):
        faces = _face_count(partner)
        excess = l + 1 - faces
        assert excess >= 0 and excess % 2 == 0
        counts[excess // 2] += 1
    return RosetteCensus(l, tuple(counts))


def rosette_count_formula(l: int, g: int) -> int:
    """Closed-form C_g(l) = (2l)!/(l! 4^g) * sum over multiplicity terms."""
    if l < 1 or g < 0:
        raise ValueError(f"rosette_count_formula requires l >= 1, g >= 0, got ({l}, {g})")
    value = Fraction(math.factorial(2 * l), math.factorial(l) * 4**g) * partition_term_sum(l, g)
    assert value.denominator == 1, f"C_g(l) must be an integer, got {value}"
    return int(value)


def moment_wick(N: int, l: int) -> Rational:
    """Wick oracle for m_2l: sum over all pairings of N^(-2 genus)."""
    if N < 1:
        raise ValueError(f"moment_wick requires N >= 1, got {N}")
    if l == 0:
        return Fraction(1)
    census = rosette_census(l)
    return sum(
        (Fraction(c, N ** (2 * g)) for g, c in enumerate(census.counts)),
        start=Fraction(0),
    )


def _series_mul(a: list[Fraction], b: list[Fraction], deg: int) -> list[Fraction]:
    out = [Fraction(0)] * (deg + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), deg + 1 - i)):
            out[i + j] += ai * b[j]
    return out


def harer_zagier_closed(N: int, p_max: int) -> list[Rational]:
    """Coefficients of x^{p+1}, p = 1 .. p_max, in (1/2)((1+x/N)/(1-x/N))^N - 1/2 - x.

    The ratio has the explicit expansion 1 + sum_{k>=1} 2 (x/N)^k; the
    N-th power is taken by repeated squaring of truncated series in exact
    rational arithmetic.
    """
    if N < 1 or p_max < 1:
        raise ValueError(f"harer_zagier_closed requires N >= 1, p_max >= 1, got ({N}, {p_max})")
    deg = p_max + 1
    ratio = [Fraction(1)] + [Fraction(2, N**k) for k in range(1, deg + 1)]
    power = [Fraction(1)] + [Fraction(0)] * deg
    base = ratio
    n = N
    while n:
        if n & 1:
            power = _series_mul(power, base, deg)
        n >>= 1
        if n:
            base = _series_mul(base, base, deg)
    series = [c / 2 for c in power]
    series[0] -= Fraction(1, 2)
    series[1] -= 1
    assert series[0] == 0 and series[1] == 0, "constant and linear terms must cancel"
    return series[2:]
