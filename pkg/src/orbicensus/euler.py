"""Orbifold Euler numbers for linear loci.

Two independent routes again: the literal stratified sum over the
intersection lattice of the hyperplane arrangement, and the closed
symmetric-function formula in the parameters s_i = 1 - 1/m_i.  Both are
exact rationals end to end.  Non-linear loci are out of scope here; the
census propagates their Euler numbers along covering edges instead.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .abelian import orb_group_order_formula
from .errors import (
    InfiniteMultiplicityError,
    NonIntegerResultError,
    NonlinearLocusError,
    NotUniformizableError,
)
from .signatures import OrbifoldSignature
from .uniformize import is_uniformizable


def generalized_binomial(a: int, k: int) -> int:
    """Binomial coefficient C(a, k) for any integer a, k >= 0, exact.

    The falling factorial a(a-1)...(a-k+1) is always divisible by k!.

    >>> generalized_binomial(-2, 3)
    -4
    >>> generalized_binomial(5, 2)
    10
    """
    if k < 0:
        raise ValueError("lower index must be non-negative")
    num = 1
    for i in range(k):
        num *= a - i
    return num // factorial(k)


def e_complement(r: int, n: int) -> int:
    """Euler number of P^n minus r general-position hyperplanes, closed form."""
    if r < 0 or n < 0:
        raise ValueError("arguments must be non-negative")
    return (-1) ** n * generalized_binomial(r - 2, n)


@lru_cache(maxsize=None)
def e_complement_recursive(r: int, n: int) -> int:
    """Same number via the deletion recursion e(r,n) = e(r-1,n) - e(r-1,n-1)."""
    if r < 0 or n < 0:
        raise ValueError("arguments must be non-negative")
    if r == 0:
        return n + 1
    if n == 0:
        return 1
    return e_complement_recursive(r - 1, n) - e_complement_recursive(r - 1, n - 1)


def s_values(sig: OrbifoldSignature) -> tuple[Fraction, ...]:
    """s_i = 1 - 1/m_i per component; linear finite loci only."""
    if not sig.is_linear:
        raise NonlinearLocusError("Euler computation is direct for linear loci only")
    if not sig.all_finite:
        raise InfiniteMultiplicityError("Euler computation needs finite multiplicities")
    return tuple(1 - Fraction(1, c.multiplicity) for c in sig.components)


def elementary_symmetric(values: tuple[Fraction, ...]) -> list[Fraction]:
    """All e_j at once, as coefficients of prod (1 + v t)."""
    coeffs = [Fraction(1)]
    for v in values:
        nxt = coeffs + [Fraction(0)]
        for j in range(len(coeffs), 0, -1):
            nxt[j] += coeffs[j - 1] * v
        coeffs = nxt
    return coeffs


def e_orb_formula(sig: OrbifoldSignature) -> Fraction:
    """e_orb = sum_{j=0}^{n} (-1)^j (n+1-j) e_j(s)."""
    svals = s_values(sig)
    coeffs = elementary_symmetric(svals)
    n = sig.dim
    total = Fraction(0)
    for j in range(n + 1):
        ej = coeffs[j] if j < len(coeffs) else Fraction(0)
        total += (-1) ** j * (n + 1 - j) * ej
    return total


def e_orb_stratified(sig: OrbifoldSignature) -> Fraction:
    """The literal lattice sum: strata weighted by 1 over the local b-value."""
    if not sig.is_linear:
        raise NonlinearLocusError("Euler computation is direct for linear loci only")
    if not sig.all_finite:
        raise InfiniteMultiplicityError("Euler computation needs finite multiplicities")
    ms = [c.multiplicity for c in sig.components]
    r = len(ms)
    n = sig.dim
    total = Fraction(0)
    for k in range(min(n, r) + 1):
        stratum = e_complement(r - k, n - k)
        if stratum == 0:
            continue
        for chosen in combinations(range(r), k):
            weight = 1
            for i in chosen:
                weight *= ms[i]
            total += Fraction(stratum, weight)
    return total


def e_universal(sig: OrbifoldSignature) -> int:
    """Euler number of the universal uniformization: e_orb times the deck order."""
    if not is_uniformizable(sig):
        raise NotUniformizableError("no universal uniformization exists")
    value = e_orb_formula(sig) * orb_group_order_formula(sig)
    if value.denominator != 1:
        raise NonIntegerResultError(
            f"e_orb * |pi1_orb| = {value} is not an integer; internal inconsistency"
        )
    return int(value)
