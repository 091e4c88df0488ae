"""Finite abelian group algebra for meridian presentations.

The orbifold fundamental group of (P^n, b) with locus components H_1..H_r is
abelian for n >= 2 and is presented on meridian generators mu_1..mu_r by

    m_1 mu_1 = ... = m_r mu_r = d_1 mu_1 + ... + d_r mu_r = 0.

Everything here reduces to Smith normal form of small integer matrices, done
in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionOneError,
    InfiniteMultiplicityError,
    InfiniteQuotientError,
)
from .signatures import OrbifoldSignature, f_vector, stratum_b_value


def _pivot_into_place(a: list[list[int]], t: int, nrows: int, ncols: int) -> bool:
    """Swap the smallest-|nonzero| entry of the trailing submatrix into (t, t)."""
    best = None
    where = None
    for i in range(t, nrows):
        for j in range(t, ncols):
            v = abs(a[i][j])
            if v and (best is None or v < best):
                best = v
                where = (i, j)
    if where is None:
        return False
    pi, pj = where
    if pi != t:
        a[t], a[pi] = a[pi], a[t]
    if pj != t:
        for row in a:
            row[t], row[pj] = row[pj], row[t]
    return True


def _clear_cross(a: list[list[int]], t: int, nrows: int, ncols: int) -> None:
    """Zero row t and column t outside the pivot; leaves the pivot positive."""
    while True:
        for i in range(t + 1, nrows):
            while a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, ncols):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
        for j in range(t + 1, ncols):
            while a[t][j]:
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for i in range(t, nrows):
                        a[i][t], a[i][j] = a[i][j], a[i][t]
        if all(a[i][t] == 0 for i in range(t + 1, nrows)):
            break
    if a[t][t] < 0:
        a[t][t] = -a[t][t]


def smith_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> tuple[int, ...]:
    """Diagonal of the Smith normal form of the given relation rows.

    Returns ncols entries d_1 | d_2 | ... with zeros trailing; the cokernel of
    the row lattice in Z^ncols is then the direct sum of Z/d_i (d_i = 0 giving
    a free Z summand).  Pivoting picks the smallest nonzero absolute value to
    bound intermediate growth.

    >>> smith_normal_form([[2, 0], [0, 2], [1, 1]], 2)
    (1, 2)
    >>> smith_normal_form([], 3)
    (0, 0, 0)
    """
    a = [list(map(int, row)) for row in rows]
    for row in a:
        if len(row) != ncols:
            raise ValueError("every relation row must have length ncols")
    nrows = len(a)
    t = 0
    while t < min(nrows, ncols):
        if not _pivot_into_place(a, t, nrows, ncols):
            break
        while True:
            _clear_cross(a, t, nrows, ncols)
            p = a[t][t]
            offender = None
            for i in range(t + 1, nrows):
                if any(a[i][j] % p for j in range(t + 1, ncols)):
                    offender = i
                    break
            if offender is None:
                break
            for j in range(t + 1, ncols):
                a[t][j] += a[offender][j]
        t += 1
    return tuple(a[i][i] for i in range(t)) + (0,) * (ncols - t)


@dataclass(frozen=True)
class GroupStructure:
    """Invariant factors (each >= 2, each dividing the next) plus free rank."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @classmethod
    def from_diagonal(cls, diag: Sequence[int]) -> "GroupStructure":
        return cls(
            tuple(d for d in diag if d >= 2),
            sum(1 for d in diag if d == 0),
        )

    def to_json(self) -> dict:
        return {
            "order": self.order if self.is_finite else "infinite",
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
        }


def cokernel_structure(rows: Iterable[Sequence[int]], ncols: int) -> GroupStructure:
    return GroupStructure.from_diagonal(smith_normal_form(rows, ncols))


@dataclass(frozen=True)
class QuotientSpec:
    """Extra relations imposed on the meridian presentation."""

    extra_relations: tuple[tuple[int, ...], ...] = ()


def orb_relation_matrix(sig: OrbifoldSignature) -> list[list[int]]:
    """Rows m_i e_i for each component plus the degree row (d_1 ... d_r)."""
    if sig.dim < 2:
        raise DimensionOneError("the meridian presentation is abelian for n >= 2 only")
    if not sig.all_finite:
        raise InfiniteMultiplicityError("presentation needs finite multiplicities")
    r = sig.r
    rows = []
    for i, c in enumerate(sig.components):
        row = [0] * r
        row[i] = c.multiplicity
        rows.append(row)
    rows.append([c.degree for c in sig.components])
    return rows


def orb_group_structure(sig: OrbifoldSignature) -> GroupStructure:
    """Structure of pi_1^orb via Smith normal form of the presentation."""
    return cokernel_structure(orb_relation_matrix(sig), sig.r)


def orb_group_order_formula(sig: OrbifoldSignature) -> int:
    """|pi_1^orb| = (prod m_i) / lcm(f_1..f_r), exact integers throughout."""
    if sig.dim < 2:
        raise DimensionOneError("the order formula applies for n >= 2 only")
    fs = f_vector(sig)
    product = 1
    for c in sig.components:
        product *= c.multiplicity
    return product // lcm(*fs)


def local_germ_order(sig: OrbifoldSignature, subset: Iterable[int]) -> int:
    """Order of the local group at a stratum: the product of the chosen m_i."""
    return stratum_b_value(sig, subset)


def quotient_structure(sig: OrbifoldSignature, spec: QuotientSpec | None = None) -> GroupStructure:
    """Structure of pi_1^orb modulo the extra relations of `spec`."""
    rows = orb_relation_matrix(sig)
    r = sig.r
    if spec is not None:
        for rel in spec.extra_relations:
            if len(rel) != r:
                raise ValueError("extra relation length must equal the component count")
            rows.append(list(rel))
    return cokernel_structure(rows, r)


def quotient_uniformizes(
    sig: OrbifoldSignature,
    spec: QuotientSpec | None = None,
    paranoid: bool = False,
) -> bool:
    """Local-injectivity test for the quotient G = pi_1^orb / extra relations.

    G must be finite.  For every stratum subset B with |B| = min(n, r) the
    image of <mu_i : i in B> in G must have order prod_{i in B} m_i; the image
    order is |G| / |G with mu_i = 0 added|, both sides by Smith normal form.
    Checking only maximal B suffices because germ groups of nested strata
    embed into one another; `paranoid` checks every |B| <= min(n, r) anyway.
    """
    base = orb_relation_matrix(sig)
    r = sig.r
    if spec is not None:
        for rel in spec.extra_relations:
            if len(rel) != r:
                raise ValueError("extra relation length must equal the component count")
            base.append(list(rel))
    g = cokernel_structure(base, r)
    if not g.is_finite:
        raise InfiniteQuotientError("quotient group is infinite")
    order = g.order
    top = min(sig.dim, r)
    sizes = range(1, top + 1) if paranoid else (top,)
    for size in sizes:
        for chosen in combinations(range(r), size):
            killed = [row[:] for row in base]
            for i in chosen:
                unit = [0] * r
                unit[i] = 1
                killed.append(unit)
            collapsed = cokernel_structure(killed, r)
            image_order = order // collapsed.order
            if image_order != stratum_b_value(sig, chosen):
                return False
    return True


def enumerate_enriques_quotients(
    n: int, paranoid: bool = False
) -> tuple[int, list[QuotientSpec]]:
    """All valid index-2 quotients of the all-2 signature on 2n+2 hyperplanes.

    The quotients are by alpha_S = sum_{i in S} mu_i over (n+1)-subsets S;
    S and its complement generate the same subgroup (the meridians sum to 0),
    so subsets are deduplicated by fixing 0 in S.  Every candidate is run
    through the local-injectivity check before being returned.
    """
    if n < 2:
        raise DimensionOneError("intermediate quotients are computed for n >= 2 only")
    r = 2 * n + 2
    sig = OrbifoldSignature.from_pairs(n, [(1, 2)] * r)
    specs = []
    for rest in combinations(range(1, r), n):
        members = {0, *rest}
        vec = tuple(1 if i in members else 0 for i in range(r))
        spec = QuotientSpec((vec,))
        if quotient_uniformizes(sig, spec, paranoid=paranoid):
            specs.append(spec)
    return len(specs), specs
