"""Existence of a finite abelian smooth uniformization.

Both formulations of the criterion are implemented independently and kept
that way on purpose: the prime-power condition ("every prime power dividing
one f divides at least n others") and the lcm condition ("no n-element
deletion drops the lcm of the f-values").  They must agree everywhere.
"""

from __future__ import annotations

from collections import Counter
from math import lcm
from typing import Iterator, Optional

from .errors import (
    DimensionOneError,
    InfiniteMultiplicityError,
    NotUniformizableError,
)
from .signatures import OrbifoldSignature, f_vector


def _require_scope(sig: OrbifoldSignature) -> None:
    if sig.dim < 2:
        raise DimensionOneError("uniformizability is decided for n >= 2 only")
    if not sig.all_finite:
        raise InfiniteMultiplicityError("uniformizability needs finite multiplicities")


def _prime_factors(v: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= v:
        while v % d == 0:
            out[d] = out.get(d, 0) + 1
            v //= d
        d += 1
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


def _per_prime_exponents(fs: tuple[int, ...]) -> dict[int, list[int]]:
    """For each prime dividing some f: the exponent of that prime in every f."""
    per: dict[int, list[int]] = {}
    for idx, f in enumerate(fs):
        for p, e in _prime_factors(f).items():
            per.setdefault(p, [0] * len(fs))[idx] = e
    return per


def is_uniformizable_prime_power(sig: OrbifoldSignature) -> bool:
    """Prime-power form: per prime, sorted exponents must satisfy exp[0] == exp[n]."""
    return failing_prime_power(sig) is None


def failing_prime_power(sig: OrbifoldSignature) -> Optional[tuple[int, int]]:
    """A witness (p, a) with p^a dividing some f but at most n-1 others, or None.

    Padding with zeros makes exp[n] meaningful when r <= n; a single component
    with f > 1 is therefore never uniformizable.
    """
    _require_scope(sig)
    fs = f_vector(sig)
    n = sig.dim
    per = _per_prime_exponents(fs)
    for p in sorted(per):
        ordered = sorted(per[p], reverse=True) + [0] * max(0, n + 1 - len(per[p]))
        if ordered[0] != ordered[n]:
            return (p, ordered[n] + 1)
    return None


def _removal_counts(values: list[int], counts: Counter, k: int) -> Iterator[list[int]]:
    """How many copies of each distinct value to delete, totalling k."""

    def rec(idx: int, remaining: int) -> Iterator[list[int]]:
        if remaining == 0:
            yield [0] * (len(values) - idx)
            return
        if idx == len(values):
            return
        cap = min(counts[values[idx]], remaining)
        for take in range(cap + 1):
            for rest in rec(idx + 1, remaining - take):
                yield [take] + rest

    yield from rec(0, k)


def is_uniformizable_lcm(sig: OrbifoldSignature) -> bool:
    """Deletion form: every (min(n, r))-element removal preserves lcm of the f's.

    The predicate depends only on the multiset of f-values, so removals are
    enumerated over distinct values with multiplicities instead of over the
    C(r, n) index subsets.
    """
    _require_scope(sig)
    fs = f_vector(sig)
    counts = Counter(fs)
    values = sorted(counts)
    total = lcm(*fs)
    k = min(sig.dim, len(fs))
    for removal in _removal_counts(values, counts, k):
        kept = [v for v, take in zip(values, removal) if counts[v] - take > 0]
        remaining = lcm(*kept) if kept else 1
        if remaining != total:
            return False
    return True


is_uniformizable = is_uniformizable_prime_power


def factorization_certificate(sig: OrbifoldSignature) -> list[tuple[int, tuple[int, ...]]]:
    """Per-prime exponent tuples of the f-vector, canonical component order.

    Each tuple realizes the shape uniformizability forces: the
    maximal exponent occurs on at least n+1 components and the rest lie in
    [0, max].  The componentwise product over all primes reconstructs the
    f-vector exactly.
    """
    if not is_uniformizable_prime_power(sig):
        raise NotUniformizableError(
            "no certificate: signature admits no finite abelian uniformization"
        )
    fs = f_vector(sig)
    per = _per_prime_exponents(fs)
    return [(p, tuple(per[p])) for p in sorted(per)]
