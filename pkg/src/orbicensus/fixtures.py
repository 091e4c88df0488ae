"""Fixture data outside the reach of the n >= 2 machinery.

Dimension 1 is classical: the four finite signatures below are the elliptic
ones, every row has e = 0 and infinite orbifold fundamental group, and none
of this is recomputed from presentations (those are not abelian on P^1).
Each dimension also carries a completion row [inf, ..., inf] (n+1 times),
uniformized by affine space; it is listed for completeness, not as a
Calabi-Yau family.
"""

from __future__ import annotations

from .signatures import INFINITY, OrbifoldSignature, census_sort_key, parse_signature

DIM1_FINITE_TEXTS = ("[2,3,6]", "[2,4,4]", "[3,3,3]", "[2,2,2,2]")


def dim1_finite_signatures() -> list[OrbifoldSignature]:
    sigs = [parse_signature(text, 1) for text in DIM1_FINITE_TEXTS]
    sigs.sort(key=census_sort_key)
    return sigs


def dim1_infinite_signatures() -> list[OrbifoldSignature]:
    """The two classical rows with an unbounded b-value."""
    return [
        completion_signature(1),
        OrbifoldSignature.from_pairs(1, [(1, 2), (1, 2), (1, INFINITY)]),
    ]


def completion_signature(n: int) -> OrbifoldSignature:
    """[inf, ..., inf] (n+1 times), uniformized by C^n."""
    return OrbifoldSignature.from_pairs(n, [(1, INFINITY)] * (n + 1))
