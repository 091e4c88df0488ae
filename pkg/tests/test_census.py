"""Enumeration, lifting, and census assembly."""

import random
from fractions import Fraction

import pytest

from orbicensus import (
    BoundsCheck,
    ConservationViolationError,
    EmptyLiftError,
    OrbifoldSignature,
    SuborbifoldChoice,
    all_two_extension_orders,
    build_census,
    check_degree_bounds,
    cy_defect,
    diagonal_suborbifolds,
    enumerate_cy,
    family_dimension,
    is_calabi_yau,
    is_uniformizable_lcm,
    lift,
    orb_group_order_formula,
    parse_signature,
    render_signature,
    verify_cover,
)
from orbicensus import census_sort_key, e_orb_formula

# ---------------------------------------------------------------- defect


def test_cy_defect_and_predicate():
    assert cy_defect(parse_signature("[2,6,6,6]", 2)) == 0
    assert is_calabi_yau(parse_signature("[2,6,6,6]", 2))
    assert cy_defect(parse_signature("[2,2,2,2]", 2)) == Fraction(-1)
    assert cy_defect(parse_signature("[2,3,7,42]", 2)) == 0
    # conic counts with its degree
    assert cy_defect(parse_signature("[2_2,3,3,3]", 2)) == 0
    from orbicensus import InfiniteMultiplicityError

    with pytest.raises(InfiniteMultiplicityError):
        cy_defect(parse_signature("[inf,inf,inf]", 2))


def test_degree_bounds():
    # both bounds and the top-degree multiplicity rule are theorems for
    # Calabi-Yau signatures, so genuine rows always come back clean
    assert check_degree_bounds(parse_signature("[2,6,6,6]", 2)) == BoundsCheck(True, "")
    assert check_degree_bounds(parse_signature("[2,2,2,2,2,2]", 2)) == BoundsCheck(True, "")
    for sig in enumerate_cy(2):
        assert check_degree_bounds(sig).ok
    with pytest.raises(ValueError):
        check_degree_bounds(parse_signature("[2,2,2,2]", 2))  # not Calabi-Yau


def test_family_dimension_conventions():
    sig = parse_signature("[2,6,6,6]", 2)
    # four lines: 4 * (C(3,2) - 1) = 8; minus dim PGL(3) = 8
    assert family_dimension(sig, "linear_system") == 8
    assert family_dimension(sig) == 0
    with pytest.raises(ValueError):
        family_dimension(sig, "nope")
    conic = parse_signature("[2_2,3,3,3]", 2)
    # conic C(4,2)-1 = 5 plus three lines 3 * 2 = 6, minus 8
    assert family_dimension(conic, "linear_system") == 11
    assert family_dimension(conic) == 3


# ---------------------------------------------------------------- enumeration


def test_enumerate_dim1_is_the_flat_quartet():
    got = {render_signature(s) for s in enumerate_cy(1)}
    assert got == {"[2,2,2,2]", "[6,3,2]", "[4,4,2]", "[3,3,3]"}


def test_enumerate_counts():
    assert len(enumerate_cy(2)) == 13
    assert len(enumerate_cy(3)) == 37


def test_enumerate_is_sorted_and_deduplicated():
    for n in (2, 3):
        sigs = enumerate_cy(n)
        assert len(set(sigs)) == len(sigs)
        keys = [census_sort_key(s) for s in sigs]
        assert keys == sorted(keys)


def test_enumerate_linear_only_filters():
    full = set(enumerate_cy(2))
    linear = set(enumerate_cy(2, linear_only=True))
    assert linear <= full
    assert all(all(c.is_linear for c in s.components) for s in linear)
    assert any(not all(c.is_linear for c in s.components) for s in full - linear)


def test_enumerate_jobs_parity():
    assert enumerate_cy(3, jobs=2) == enumerate_cy(3, jobs=1)
    assert enumerate_cy(2, jobs=3) == enumerate_cy(2)


def _naive_enumerate(n):
    """Slot-by-slot search with only the budget bound; no carrier pruning.

    Contributions d/m are required to be non-increasing along the recursion,
    so with degree budget D left after taking a slot of contribution c the
    remaining target t' satisfies t' <= c * D, which caps m.  The
    uniformizability filter applied at the end is the lcm route, not the
    prime-power route the production search uses.
    """
    found = set()
    for d in range(n + 2, 2 * n + 3):
        target = Fraction(d - (n + 1))

        def rec(budget, t, c_prev, acc):
            if budget == 0:
                if t == 0:
                    found.add(OrbifoldSignature.from_pairs(n, acc))
                return
            if t <= 0:
                return
            for deg in range(1, budget + 1):
                slots_after = budget - deg
                m_hi = (deg * (1 + slots_after)) / t  # c*(1+slots_after) >= t
                m = 2
                while m <= m_hi:
                    c = Fraction(deg, m)
                    if (c_prev is None or c <= c_prev) and c <= t:
                        rec(budget - deg, t - c, c, acc + [(deg, m)])
                    m += 1

        rec(d, target, None, [])
    return {s for s in found if cy_defect(s) == 0 and is_uniformizable_lcm(s)}


@pytest.mark.parametrize("n", [2, 3])
def test_enumerate_matches_naive_search(n):
    assert set(enumerate_cy(n)) == _naive_enumerate(n)


def test_ghost_rows_are_genuine():
    # four degree-valid signatures with a degree-2 component that the n = 3
    # table does not print; all check out as honest Calabi-Yau rows
    ghosts = {
        "[2_3,4_2,2,2]": 16,
        "[2_3,2_2,2,2,2]": 16,
        "[2_3,2,2,2,2,2]": 32,
        "[2_2,2,2,2,2,2,2]": 64,
    }
    census = set(enumerate_cy(3))
    for text, order in ghosts.items():
        sig = parse_signature(text, 3)
        assert sig in census
        assert cy_defect(sig) == 0
        assert orb_group_order_formula(sig) == order


# ---------------------------------------------------------------- lifting


def test_lift_conic_example():
    sig = parse_signature("[2_2,3,3,3]", 2)
    choice = SuborbifoldChoice(branch=(1, 2, 3), c=3)
    assert render_signature(lift(sig, choice)) == "[2_6]"


def test_lift_kummer_cover():
    sig = parse_signature("[2,6,6,6]", 2)  # canonical [6,6,6,2]
    lifted = lift(sig, SuborbifoldChoice(branch=(0, 1, 2), c=3))
    assert render_signature(lifted) == "[2_3,2,2,2]"
    again = lift(lifted, SuborbifoldChoice(branch=(1, 2, 3), c=2))
    assert render_signature(again) == "[2_6]"


def test_lift_dimension_one_expands_points():
    sig = parse_signature("[6,3,2]", 1)
    lifted = lift(sig, SuborbifoldChoice(branch=(0, 1), c=3))
    # the unbranched double point pulls back to three points of multiplicity 2
    assert render_signature(lifted) == "[2,2,2,2]"


def test_lift_empty_and_invalid():
    kummer = parse_signature("[2,2,2]", 1)
    with pytest.raises(EmptyLiftError):
        lift(parse_signature("[2,2]", 1), SuborbifoldChoice(branch=(0, 1), c=2))
    with pytest.raises(ValueError):
        lift(kummer, SuborbifoldChoice(branch=(0, 1), c=3))  # 3 does not divide 2
    with pytest.raises(ValueError):
        lift(kummer, SuborbifoldChoice(branch=(0,), c=2))  # needs dim+1 members
    conic = parse_signature("[2_2,3,3,3]", 2)
    with pytest.raises(ValueError):
        lift(conic, SuborbifoldChoice(branch=(0, 1, 2), c=3))  # conic not linear


def test_lift_keeps_infinite_branch_members():
    sig = parse_signature("[inf,2,2]", 1)
    lifted = lift(sig, SuborbifoldChoice(branch=(0, 1), c=2))
    # inf/2 = inf on the branch; the other double point expands to two points
    assert render_signature(lifted) == "[inf,2,2]"


def test_verify_cover_rejects_wrong_pairs():
    src = parse_signature("[2,6,6,6]", 2)
    bogus = parse_signature("[2,6,6,6]", 2)
    with pytest.raises(ConservationViolationError):
        verify_cover(src, bogus, 2)


def test_diagonal_suborbifolds_enumeration():
    sig = parse_signature("[2,6,6,6]", 2)  # canonical [6,6,6,2]
    choices = diagonal_suborbifolds(sig)
    # branch {6,6,6}: c in {2,3,6}; branches containing the 2: c = 2 only
    assert len(choices) == 3 + 3
    assert {ch.c for ch in choices} == {2, 3, 6}
    none_here = parse_signature("[inf,inf,inf]", 2)
    assert diagonal_suborbifolds(none_here) == []


# ---------------------------------------------------------------- census


@pytest.fixture(scope="module")
def census2():
    return build_census(2)


@pytest.fixture(scope="module")
def census3():
    return build_census(3)


def test_census_shapes(census2, census3):
    rows2, _ = census2
    rows3, _ = census3
    assert len(rows2) == 14
    assert len(rows3) == 38
    for rows in (rows2, rows3):
        assert [r.index for r in rows] == list(range(1, len(rows) + 1))
        first = rows[0]
        assert first.order is None
        assert all(not c.is_finite for c in first.signature.components)
        assert all(r.order is not None for r in rows[1:])


def test_census_dim1_fixture_rows():
    rows, report = build_census(1)
    assert len(rows) == 6
    assert report.entries == []
    assert all(r.order is None for r in rows)
    assert all(r.e_orb == 0 for r in rows)
    texts = {render_signature(r.signature) for r in rows}
    assert texts == {"[inf,inf]", "[inf,2,2]", "[2,2,2,2]", "[3,3,3]", "[4,4,2]", "[6,3,2]"}


def test_census_orders_match_group_structure(census2, census3):
    for rows, _ in (census2, census3):
        for row in rows[1:]:
            assert row.group is not None
            assert row.group.order == row.order
            assert row.order == orb_group_order_formula(row.signature)


def test_census_euler_provenance(census2, census3):
    rows2, _ = census2
    assert {r.e_provenance for r in rows2} <= {"fixture", "computed-linear", "propagated", "unknown"}
    # every row with a value is consistent: e_universal = e_orb * order
    for rows, _ in (census2, census3):
        for row in rows[1:]:
            if row.e_universal is not None:
                assert row.e_orb * row.order == row.e_universal


def test_census_covering_conservation(census2, census3):
    seen = 0
    for rows, _ in (census2, census3):
        by_index = {r.index: r for r in rows}
        n = rows[0].signature.dim
        for row in rows:
            for edge in row.coverings:
                target = by_index[edge.target_row]
                assert target.signature == edge.target
                assert edge.deck_order == edge.c**n
                if row.order is not None and target.order is not None:
                    assert row.order == target.order * edge.c**n
                    seen += 1
    assert seen > 20


def test_census_dim1_lift_edges_close_up():
    rows, _ = build_census(1)
    sigs = {r.signature for r in rows}
    for row in rows:
        for edge in row.coverings:
            assert edge.target in sigs


def test_census_jobs_parity():
    a, _ = build_census(2, jobs=2)
    b, _ = build_census(2)
    assert [(r.index, r.signature, r.order, r.e_universal) for r in a] == [
        (r.index, r.signature, r.order, r.e_universal) for r in b
    ]


def test_census_errata_counts(census2, census3):
    _, rep2 = census2
    _, rep3 = census3
    assert len(rep2.unknown()) == 0 and len(rep3.unknown()) == 0
    assert len(rep2.known()) == 5
    assert len(rep3.known()) == 19


def test_census_flags_mirror_errata(census2):
    rows, report = census2
    flagged = {render_signature(r.signature): r.flags for r in rows if r.flags}
    for entry in report.entries:
        if entry.signature:
            assert any(entry.field in f for f in flagged[entry.signature])


def test_kummer_sanity_via_covers():
    # [m,...,m] with n+1 entries lifts along c = m to an empty locus; the
    # conservation laws are exercised through lift() on the n = 2 census rows
    for m in (2, 3, 4, 6):
        sig = OrbifoldSignature.from_pairs(2, [(1, m)] * 3)
        assert cy_defect(sig) == -Fraction(3, m)  # balanced only in the limit
        assert e_orb_formula(sig) * m**2 == 3


def test_all_two_extension_orders():
    assert all_two_extension_orders(3) == (128, 1024, 24576)
    base, flips, full = all_two_extension_orders(2)
    assert base == 32 and flips == 32 * 4 and full == 32 * 4 * 6


def test_unknown_dimension_rejected():
    with pytest.raises(ValueError):
        build_census(4)
    with pytest.raises(ValueError):
        enumerate_cy(0)
