"""Calabi-Yau classification: condition, bounds, enumeration, liftings, census.

The enumeration is an exact-rational Egyptian-fraction search.  For a fixed
degree multiset with total d, the condition reads sum d_i/m_i = d - (n+1);
components are assigned with keys (d_i/m_i, d_i) in non-increasing
lexicographic order, so every multiset is generated exactly once, and the
residual target bounds the multiplicity range at each step.  Candidates are
kept only if they pass the uniformizability criterion.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, floor, gcd
from typing import Callable, Iterable, NamedTuple, Optional

from .abelian import GroupStructure, orb_group_order_formula, orb_group_structure
from .errors import (
    ConservationViolationError,
    EmptyLiftError,
    InfiniteMultiplicityError,
)
from .euler import e_orb_formula, e_universal
from .fixtures import (
    completion_signature,
    dim1_finite_signatures,
    dim1_infinite_signatures,
)
from .signatures import (
    INFINITY,
    LocusComponent,
    OrbifoldSignature,
    census_sort_key,
    render_signature,
    total_degree,
)
from .uniformize import is_uniformizable


def cy_defect(sig: OrbifoldSignature) -> Fraction:
    """sum d_i (1 - 1/m_i) - (n+1); zero exactly for Calabi-Yau signatures."""
    if not sig.all_finite:
        raise InfiniteMultiplicityError("the defect needs finite multiplicities")
    total = Fraction(0)
    for c in sig.components:
        total += c.degree * (1 - Fraction(1, c.multiplicity))
    return total - (sig.dim + 1)


def is_calabi_yau(sig: OrbifoldSignature) -> bool:
    return cy_defect(sig) == 0


class BoundsCheck(NamedTuple):
    ok: bool
    reason: str


def check_degree_bounds(sig: OrbifoldSignature) -> BoundsCheck:
    """Degree window n+2 <= d <= 2n+2 for Calabi-Yau signatures.

    At the top degree every multiplicity must equal 2.  The bounds are
    theorems, so a False result signals a caller bug, not a data condition.
    """
    if cy_defect(sig) != 0:
        raise ValueError("degree bounds apply to Calabi-Yau signatures only")
    d = total_degree(sig)
    n = sig.dim
    if d < n + 2 or d > 2 * n + 2:
        return BoundsCheck(False, f"degree {d} outside [{n + 2}, {2 * n + 2}]")
    if d == 2 * n + 2 and any(c.multiplicity != 2 for c in sig.components):
        return BoundsCheck(False, "degree 2n+2 forces every multiplicity to equal 2")
    return BoundsCheck(True, "")


def _delta_linear_system(dim: int, degrees: Iterable[int]) -> int:
    return sum(comb(dim + d, dim) - 1 for d in degrees)


def family_dimension(sig: OrbifoldSignature, convention: str = "moduli") -> int:
    """Parameter count of the locus configuration.

    `linear_system` counts each hypersurface's coefficients projectively;
    `moduli` subtracts dim PGL(n+1) = (n+1)^2 - 1 and is the tables' column.
    """
    if not sig.all_finite:
        raise InfiniteMultiplicityError("family dimension is tabulated for finite rows")
    base = _delta_linear_system(sig.dim, (c.degree for c in sig.components))
    if convention == "linear_system":
        return base
    if convention == "moduli":
        return base - ((sig.dim + 1) ** 2 - 1)
    raise ValueError("convention must be 'moduli' or 'linear_system'")


def _degree_partitions(d: int) -> Iterable[tuple[int, ...]]:
    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(d, d)


def _factorize(v: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= v:
        while v % p == 0:
            out[p] = out.get(p, 0) + 1
            v //= p
        p += 1
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


def _carriers_viable(factored_fs: list[dict[int, int]], slots_left: int, n: int) -> bool:
    """Can every prime already in play still reach n+1 top-power carriers?

    For a prime p with maximal assigned exponent a on cnt components, the
    final count of components divisible by p^(final max) is at most
    cnt + slots_left whatever the remaining assignments do.
    """
    tops: dict[int, int] = {}
    alphas: dict[int, int] = {}
    for fac in factored_fs:
        for p, e in fac.items():
            a = alphas.get(p, 0)
            if e > a:
                alphas[p] = e
                tops[p] = 1
            elif e == a:
                tops[p] += 1
    return all(cnt + slots_left >= n + 1 for cnt in tops.values())


def _search_partition(
    n: int, parts: tuple[int, ...], emit: Callable[[tuple[tuple[int, int], ...]], None]
) -> None:
    """All multiplicity assignments making the given degree multiset Calabi-Yau."""
    remaining = Counter(parts)
    factored: list[dict[int, int]] = []
    chosen: list[tuple[int, int]] = []
    target = Fraction(sum(parts) - (n + 1))
    if target <= 0:
        return

    def rec(t: Fraction, prev_key: Optional[tuple[Fraction, int]], slots_left: int) -> None:
        if slots_left == 0:
            if t == 0:
                emit(tuple(chosen))
            return
        if t <= 0 or not _carriers_viable(factored, slots_left, n):
            return
        for dd in sorted(remaining, reverse=True):
            if not remaining[dd]:
                continue
            if slots_left == 1:
                if (dd * t.denominator) % t.numerator:
                    continue
                candidates = [dd * t.denominator // t.numerator]
            else:
                m_lo = floor(Fraction(dd) / t) + 1
                m_hi = floor(Fraction(dd * slots_left) / t)
                candidates = range(max(2, m_lo), m_hi + 1)
            for m in candidates:
                if m < 2:
                    continue
                key = (Fraction(dd, m), dd)
                if prev_key is not None and key > prev_key:
                    continue
                remaining[dd] -= 1
                chosen.append((dd, m))
                factored.append(_factorize(m // gcd(m, dd)))
                rec(t - key[0], key, slots_left - 1)
                factored.pop()
                chosen.pop()
                remaining[dd] += 1

    rec(target, None, len(parts))


def _partition_task(args: tuple[int, tuple[int, ...]]) -> list[tuple[tuple[int, int], ...]]:
    n, parts = args
    found: list[tuple[tuple[int, int], ...]] = []
    _search_partition(n, parts, found.append)
    out = []
    for pairs in found:
        if is_uniformizable(OrbifoldSignature.from_pairs(n, pairs)):
            out.append(pairs)
    return out


def enumerate_cy(n: int, linear_only: bool = False, jobs: int = 1) -> list[OrbifoldSignature]:
    """The complete list of abelian Calabi-Yau signatures on P^n.

    Sorted by (total degree, canonical components), duplicate-free, finite
    multiplicities only.  n = 1 is the classical fixture list; the search
    machinery applies from n = 2 on.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n == 1:
        return dim1_finite_signatures()
    tasks: list[tuple[int, tuple[int, ...]]] = []
    for d in range(n + 2, 2 * n + 3):
        if linear_only:
            tasks.append((n, (1,) * d))
        else:
            tasks.extend((n, parts) for parts in _degree_partitions(d))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_partition_task, tasks))
    else:
        batches = [_partition_task(task) for task in tasks]
    sigs = {OrbifoldSignature.from_pairs(n, pairs) for batch in batches for pairs in batch}
    return sorted(sigs, key=census_sort_key)


@dataclass(frozen=True)
class SuborbifoldChoice:
    """n+1 linear branch components (indices) and their common divisor c."""

    branch: tuple[int, ...]
    c: int


@dataclass(frozen=True)
class CoveringEdge:
    sub_vector: tuple[int, ...]
    c: int
    deck_order: int
    target: OrbifoldSignature
    target_row: Optional[int] = None


def diagonal_suborbifolds(sig: OrbifoldSignature) -> list[SuborbifoldChoice]:
    """Candidate diagonal sub-orbifolds: n+1 linear components, divisor c >= 2.

    Infinite multiplicities admit every divisor, so a candidate needs at
    least one finite branch member to pin c down; the all-infinite completion
    row therefore has no enumerable candidates.
    """
    n = sig.dim
    linear = [i for i, comp in enumerate(sig.components) if comp.is_linear]
    out = []
    for branch in combinations(linear, n + 1):
        finite = [
            sig.components[i].multiplicity for i in branch if sig.components[i].is_finite
        ]
        if not finite:
            continue
        g = gcd(*finite)
        for c in range(2, g + 1):
            if g % c == 0:
                out.append(SuborbifoldChoice(branch, c))
    return out


def lift_components(
    dim: int,
    comps: tuple[LocusComponent, ...],
    branch: Iterable[int],
    c: int,
) -> tuple[LocusComponent, ...]:
    """Transport the locus to the uniformization of a diagonal sub-orbifold.

    Branch components get multiplicity m/c (dropped at 1, with inf/c = inf);
    every other component of degree d pulls back to one component of degree
    c*d with unchanged multiplicity.  On P^1 a locus of degree k is k points,
    so lifted components are expanded accordingly there.
    """
    members = set(branch)
    if len(members) != dim + 1:
        raise ValueError(f"a diagonal sub-orbifold needs exactly {dim + 1} distinct branch components")
    if c < 2:
        raise ValueError("the common multiplicity divisor must be >= 2")
    for i in members:
        if not 0 <= i < len(comps):
            raise ValueError(f"branch index {i} out of range")
        if not comps[i].is_linear:
            raise ValueError("branch components must be linear")
        if comps[i].is_finite and comps[i].multiplicity % c:
            raise ValueError(f"{c} does not divide branch multiplicity {comps[i].multiplicity}")
    pairs: list[tuple[int, object]] = []
    for i, comp in enumerate(comps):
        if i in members:
            if comp.is_finite:
                m = comp.multiplicity // c
                if m > 1:
                    pairs.append((1, m))
            else:
                pairs.append((1, INFINITY))
        else:
            pairs.append((comp.degree * c, comp.multiplicity))
    if dim == 1:
        pairs = [(1, m) for d, m in pairs for _ in range(d)]
    if not pairs:
        raise EmptyLiftError("every component was divided away; the lift has empty locus")
    return tuple(LocusComponent(d, m) for d, m in pairs)


def verify_cover(source: OrbifoldSignature, lifted: OrbifoldSignature, c: int) -> None:
    """Conservation laws of a degree-c**n covering, checked where they apply.

    The defect always scales by c; for n >= 2 with finite multiplicities the
    group orders must satisfy |pi1(source)| = |pi1(lift)| * c^n.
    """
    if source.all_finite and lifted.all_finite:
        if cy_defect(lifted) != c * cy_defect(source):
            raise ConservationViolationError("defect scaling failed along the covering")
        if source.dim >= 2:
            src = orb_group_order_formula(source)
            dst = orb_group_order_formula(lifted)
            if src != dst * c**source.dim:
                raise ConservationViolationError(
                    f"group order {src} != {dst} * {c}^{source.dim} along the covering"
                )


def lift(sig: OrbifoldSignature, choice: SuborbifoldChoice) -> OrbifoldSignature:
    """Lift along a candidate and verify the conservation laws."""
    lifted = OrbifoldSignature(
        sig.dim, lift_components(sig.dim, sig.components, choice.branch, choice.c)
    )
    verify_cover(sig, lifted, choice.c)
    return lifted


@dataclass(frozen=True)
class CensusRow:
    index: int
    signature: OrbifoldSignature
    degree: int
    order: Optional[int]  # None means infinite
    group: Optional[GroupStructure]  # None when no abelian presentation applies
    e_orb: Optional[Fraction]
    e_universal: Optional[int]
    e_provenance: str  # computed-linear | propagated | unknown | fixture
    delta_moduli: int
    delta_linear_system: int
    coverings: tuple[CoveringEdge, ...]
    flags: tuple[str, ...] = ()


def _covering_edges(
    sig: OrbifoldSignature, index_of: dict[OrbifoldSignature, int]
) -> tuple[CoveringEdge, ...]:
    seen: dict[tuple[int, OrbifoldSignature], CoveringEdge] = {}
    for choice in diagonal_suborbifolds(sig):
        lifted = lift(sig, choice)
        key = (choice.c, lifted)
        if key in seen:
            continue
        if lifted not in index_of:
            raise RuntimeError(
                f"lift {render_signature(lifted)} of {render_signature(sig)} "
                "is missing from the census; enumeration is incomplete"
            )
        vec = tuple(
            choice.c if i in set(choice.branch) else 1 for i in range(sig.r)
        )
        seen[key] = CoveringEdge(
            sub_vector=vec,
            c=choice.c,
            deck_order=choice.c**sig.dim,
            target=lifted,
            target_row=index_of[lifted],
        )
    return tuple(sorted(seen.values(), key=lambda e: (e.c, e.target_row)))


def _build_row(
    n: int, index: int, sig: OrbifoldSignature, index_of: dict[OrbifoldSignature, int]
) -> CensusRow:
    degree = total_degree(sig)
    delta_ls = _delta_linear_system(n, (c.degree for c in sig.components))
    delta_mod = delta_ls - ((n + 1) ** 2 - 1)
    if not sig.all_finite:
        # completion rows and the classical [2,2,inf]; table convention puts
        # delta = 0 for the rigid all-infinite configuration
        group = GroupStructure((), n) if n >= 2 else None
        if all(not c.is_finite for c in sig.components):
            delta_mod = 0
        return CensusRow(
            index=index,
            signature=sig,
            degree=degree,
            order=None,
            group=group,
            e_orb=Fraction(0),
            e_universal=0,
            e_provenance="fixture",
            delta_moduli=delta_mod,
            delta_linear_system=delta_ls,
            coverings=_covering_edges(sig, index_of),
        )
    if n == 1:
        return CensusRow(
            index=index,
            signature=sig,
            degree=degree,
            order=None,
            group=None,
            e_orb=Fraction(0),
            e_universal=0,
            e_provenance="fixture",
            delta_moduli=delta_mod,
            delta_linear_system=delta_ls,
            coverings=_covering_edges(sig, index_of),
        )
    order = orb_group_order_formula(sig)
    group = orb_group_structure(sig)
    if group.order != order:
        raise RuntimeError(
            f"order formula {order} disagrees with invariant factors {group} "
            f"for {render_signature(sig)}"
        )
    bounds = check_degree_bounds(sig)
    if not bounds.ok:
        raise RuntimeError(f"{render_signature(sig)}: {bounds.reason}")
    if sig.is_linear:
        e_orb = e_orb_formula(sig)
        e_uni = e_universal(sig)
        prov = "computed-linear"
    else:
        e_orb = None
        e_uni = None
        prov = "unknown"
    return CensusRow(
        index=index,
        signature=sig,
        degree=degree,
        order=order,
        group=group,
        e_orb=e_orb,
        e_universal=e_uni,
        e_provenance=prov,
        delta_moduli=delta_mod,
        delta_linear_system=delta_ls,
        coverings=_covering_edges(sig, index_of),
    )


def _propagate_euler(rows: list[CensusRow]) -> list[CensusRow]:
    """Spread e_universal across covering-connected components.

    Coverings share their universal uniformization, so the value is constant
    on every connected component of the undirected covering graph; rows in
    components without a linear member stay unknown, as in the tables.
    """
    parent = list(range(len(rows)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    for i, row in enumerate(rows):
        for edge in row.coverings:
            union(i, edge.target_row - 1)
    members: dict[int, list[int]] = {}
    for i in range(len(rows)):
        members.setdefault(find(i), []).append(i)
    out = list(rows)
    for group in members.values():
        seeds = {
            rows[i].e_universal
            for i in group
            if rows[i].e_provenance == "computed-linear"
        }
        if len(seeds) != 1:
            # empty: nothing to propagate; >1 cannot happen for exact values,
            # but if it ever did the rows are flagged rather than guessed at
            if len(seeds) > 1:
                for i in group:
                    out[i] = replace(
                        out[i],
                        flags=out[i].flags + (f"euler-conflict: seeds {sorted(seeds)}",),
                    )
            continue
        value = seeds.pop()
        for i in group:
            if out[i].e_universal is None:
                e_orb = Fraction(value, out[i].order) if out[i].order else None
                out[i] = replace(
                    out[i], e_universal=value, e_orb=e_orb, e_provenance="propagated"
                )
    return out


def _assemble_rows(n: int, jobs: int) -> list[CensusRow]:
    if n == 1:
        infinite = dim1_infinite_signatures()
        ordered = [infinite[0]] + sorted(
            infinite[1:] + dim1_finite_signatures(), key=census_sort_key
        )
    else:
        ordered = [completion_signature(n)] + enumerate_cy(n, jobs=jobs)
    index_of = {sig: i for i, sig in enumerate(ordered, start=1)}
    rows = [_build_row(n, i, sig, index_of) for i, sig in enumerate(ordered, start=1)]
    return _propagate_euler(rows)


def build_census(n: int, jobs: int = 1, golden: bool = True):
    """Classify dimension n and audit against the transcribed table.

    Returns (rows, errata report).  Supported for n in {1, 2, 3}, the
    dimensions with fully transcribed tables; higher dimensions are served
    by enumerate_cy and the linear-list containment check.
    """
    if n not in (1, 2, 3):
        raise ValueError("full census assembly is provided for n in {1, 2, 3}")
    rows = _assemble_rows(n, jobs)
    from .golden import ErrataReport, compare_for_dim

    if not golden:
        return rows, ErrataReport([])
    report = compare_for_dim(rows, n)
    by_sig: dict[str, list[str]] = {}
    for entry in report.entries:
        if entry.signature:
            by_sig.setdefault(entry.signature, []).append(
                f"{entry.field}: table has {entry.table_value}, computed {entry.computed_value}"
            )
    rows = [
        replace(row, flags=row.flags + tuple(by_sig.get(render_signature(row.signature), ())))
        for row in rows
    ]
    return rows, report


def all_two_extension_orders(n: int = 3) -> tuple[int, int, int]:
    """Order bookkeeping for the all-2 signature on 2n+2 hyperplanes.

    The locus z_0 +- z_1 +- ... = 0 is carried to itself by the coordinate
    sign flips (order 2^n as a projective group) and by the coordinate
    permutations (order (n+1)!).  Returns the deck-group order of the
    universal uniformization and its two successive extension orders; no
    non-abelian group is constructed.
    """
    sig = OrbifoldSignature.from_pairs(n, [(1, 2)] * (2 * n + 2))
    base = orb_group_order_formula(sig)
    return base, base * 2**n, base * 2**n * factorial(n + 1)
