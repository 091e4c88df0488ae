"""Orbifold signatures on projective space.

A signature records the ambient dimension n and the locus components as
(degree, multiplicity) pairs, written in the bracket notation of the census
tables: ``[2_2,3,3,3]`` is a conic with multiplicity 2 plus three lines with
multiplicity 3.  An omitted degree means 1.  Components are kept in canonical
order, sorted by (degree, multiplicity) descending, with ``inf`` above every
finite multiplicity; two signatures are equal iff their canonical forms are.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

from .errors import (
    InfiniteMultiplicityError,
    SignatureSyntaxError,
    SubsetTooLargeError,
)


class InfinityType:
    """Multiplicity of a component along which b is unbounded."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_infinity_instance, ())


def _infinity_instance() -> "InfinityType":
    return INFINITY


INFINITY = InfinityType()

Multiplicity = Union[int, InfinityType]


@dataclass(frozen=True)
class LocusComponent:
    """One irreducible locus piece: hypersurface degree and generic b-value."""

    degree: int
    multiplicity: Multiplicity

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError("component degree must be an integer >= 1")
        if self.multiplicity is INFINITY:
            if self.degree != 1:
                raise ValueError("infinite multiplicity occurs on linear components only")
        elif not isinstance(self.multiplicity, int) or self.multiplicity < 2:
            raise ValueError("finite multiplicity must be an integer >= 2")

    @property
    def is_linear(self) -> bool:
        return self.degree == 1

    @property
    def is_finite(self) -> bool:
        return self.multiplicity is not INFINITY

    def f_value(self) -> int:
        """f = m / gcd(m, d), the arithmetic shadow of this component."""
        if not self.is_finite:
            raise InfiniteMultiplicityError("f-value needs a finite multiplicity")
        return self.multiplicity // gcd(self.multiplicity, self.degree)


def _component_key(c: LocusComponent) -> tuple[int, int, int]:
    # INFINITY sorts above any finite multiplicity of the same degree.
    if c.multiplicity is INFINITY:
        return (c.degree, 1, 0)
    return (c.degree, 0, c.multiplicity)


@dataclass(frozen=True)
class OrbifoldSignature:
    """The pair (P^n, b) at the combinatorial level: dimension plus components."""

    dim: int
    components: tuple[LocusComponent, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError("ambient dimension must be an integer >= 1")
        comps = tuple(self.components)
        if not comps:
            raise ValueError("signature needs at least one locus component")
        ordered = tuple(sorted(comps, key=_component_key, reverse=True))
        object.__setattr__(self, "components", ordered)

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[tuple[int, Multiplicity]]) -> "OrbifoldSignature":
        return cls(dim, tuple(LocusComponent(d, m) for d, m in pairs))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def is_linear(self) -> bool:
        return all(c.is_linear for c in self.components)

    @property
    def all_finite(self) -> bool:
        return all(c.is_finite for c in self.components)

    def __str__(self) -> str:
        return render_signature(self)


def canonicalize(sig: OrbifoldSignature) -> OrbifoldSignature:
    """Identity on signatures; the constructor already sorts components."""
    return sig


def parse_components(text: str) -> tuple[LocusComponent, ...]:
    """Parse bracket notation, preserving the written component order.

    >>> parse_components("[2_2, 3,3,3]")
    (LocusComponent(degree=2, multiplicity=2), LocusComponent(degree=1, multiplicity=3), LocusComponent(degree=1, multiplicity=3), LocusComponent(degree=1, multiplicity=3))
    """
    s = text
    n = len(s)
    i = 0

    def skip_ws() -> None:
        nonlocal i
        while i < n and s[i].isspace():
            i += 1

    def fail(msg: str, col: int | None = None) -> None:
        raise SignatureSyntaxError(msg, i + 1 if col is None else col)

    def read_int(what: str) -> tuple[int, int]:
        nonlocal i
        start = i
        while i < n and s[i].isdigit():
            i += 1
        if i == start:
            fail(f"expected {what}", start + 1)
        return int(s[start:i]), start + 1

    skip_ws()
    if i >= n or s[i] != "[":
        fail("expected '['")
    i += 1
    comps: list[LocusComponent] = []
    while True:
        skip_ws()
        mult: Multiplicity
        if i < n and (s[i] == "∞" or s.startswith("inf", i)):
            i += 1 if s[i] == "∞" else 3
            mult = INFINITY
        elif i < n and s[i].isdigit():
            value, item_col = read_int("a multiplicity")
            if value < 2:
                fail("multiplicity must be >= 2", item_col)
            mult = value
        else:
            fail("expected a multiplicity, '∞' or 'inf'")
        degree = 1
        skip_ws()
        if i < n and s[i] == "_":
            i += 1
            skip_ws()
            degree, deg_col = read_int("a degree")
            if degree < 1:
                fail("degree must be >= 1", deg_col)
            if mult is INFINITY and degree != 1:
                fail("infinite multiplicity occurs on linear components only", deg_col)
        comps.append(LocusComponent(degree, mult))
        skip_ws()
        if i < n and s[i] == ",":
            i += 1
            continue
        if i < n and s[i] == "]":
            i += 1
            break
        fail("expected ',' or ']'")
    skip_ws()
    if i != n:
        fail("unexpected trailing text")
    return tuple(comps)


def parse_signature(text: str, dim: int) -> OrbifoldSignature:
    """Parse and canonicalize.

    >>> str(parse_signature("[2_2,3,3,3]", 2))
    '[2_2,3,3,3]'
    >>> str(parse_signature("[2,6,6,6]", 2))
    '[6,6,6,2]'
    """
    return OrbifoldSignature(dim, parse_components(text))


def render_component(c: LocusComponent, human: bool = False) -> str:
    m = str(c.multiplicity) if c.is_finite else ("∞" if human else "inf")
    return m if c.degree == 1 else f"{m}_{c.degree}"


def render_components(comps: Iterable[LocusComponent], human: bool = False) -> str:
    return "[" + ",".join(render_component(c, human) for c in comps) + "]"


def render_signature(sig: OrbifoldSignature, human: bool = False) -> str:
    return render_components(sig.components, human)


def total_degree(sig: OrbifoldSignature) -> int:
    """d = sum of component degrees."""
    return sum(c.degree for c in sig.components)


def f_vector(sig: OrbifoldSignature) -> tuple[int, ...]:
    """f_i = m_i / gcd(m_i, d_i), aligned with the canonical component order."""
    if not sig.all_finite:
        raise InfiniteMultiplicityError("f-vector needs all multiplicities finite")
    return tuple(c.f_value() for c in sig.components)


def stratum_b_value(sig: OrbifoldSignature, subset: Iterable[int]) -> int:
    """b at a point on exactly the components in `subset`: the product of their m_i."""
    chosen = sorted(set(subset))
    if len(chosen) > sig.dim:
        raise SubsetTooLargeError(
            f"strata of depth {len(chosen)} are empty in dimension {sig.dim}"
        )
    value = 1
    for i in chosen:
        c = sig.components[i]
        if not c.is_finite:
            raise InfiniteMultiplicityError("stratum b-value needs finite multiplicities")
        value *= c.multiplicity
    return value


def census_sort_key(sig: OrbifoldSignature) -> tuple:
    """Deterministic census ordering: by total degree, then canonical components."""
    return (total_degree(sig), tuple(_component_key(c) for c in sig.components))
