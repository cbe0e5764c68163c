"""Semigroup arithmetic against brute-force oracles and frozen values."""

from math import gcd

import pytest
from hypothesis import given, strategies as st

import gmspectra.semigroup as sgp


# ---------------------------------------------------------------- oracles


def brute_membership(gens, bound):
    """Independent closure computation: repeated saturation of a set."""
    elems = {0}
    changed = True
    while changed:
        changed = False
        for e in sorted(elems):
            for g in gens:
                s = e + g
                if s <= bound and s not in elems:
                    elems.add(s)
                    changed = True
    return elems


def brute_symmetric_gap_sets(g):
    """All symmetric gap sets of genus g by exhaustive pair assignment."""
    F = 2 * g - 1
    out = []
    for mask in range(1 << (g - 1)):
        mem = [False] * (F + 1)
        mem[0] = True
        for k in range(1, g):
            inside = bool(mask >> (k - 1) & 1)
            mem[k] = inside
            mem[F - k] = not inside
        ok = True
        elts = [k for k in range(F + 1) if mem[k]]
        for a in elts:
            if a == 0:
                continue
            for b in elts:
                if b < a:
                    continue
                if a + b <= F and not mem[a + b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(k for k in range(1, F + 1) if not mem[k]))
    return sorted(out)


# ---------------------------------------------------------- construction


def test_small_examples():
    H = sgp.from_generators([3, 4])
    assert H.gaps == (1, 2, 5)
    assert H.genus == 3
    assert H.frobenius == 5
    assert H.symmetric
    H = sgp.from_generators([3, 5])
    assert H.gaps == (1, 2, 4, 7)
    assert H.genus == 4
    H = sgp.from_generators([1])
    assert H.gaps == ()
    assert H.genus == 0
    assert H.frobenius == -1
    assert 0 in H and 1 in H and 17 in H


def test_three_seven():
    H = sgp.from_generators([3, 7])
    assert H.gaps == (1, 2, 4, 5, 8, 11)
    assert H.genus == 6
    assert sgp.gap_sum(H) == 31
    assert H.symmetric
    assert not H.hyperelliptic


def test_rejections():
    with pytest.raises(ValueError):
        sgp.from_generators([])
    with pytest.raises(ValueError):
        sgp.from_generators([4, 6])
    with pytest.raises(ValueError):
        sgp.from_generators([0, 3])
    with pytest.raises(ValueError):
        sgp.from_generators([3, -2])


def test_minimal_generators():
    assert sgp.from_generators([3, 4, 7]).generators == (3, 4)
    assert sgp.from_generators([2, 4, 5]).generators == (2, 5)
    assert sgp.from_generators([6, 10, 15]).generators == (6, 10, 15)
    assert sgp.from_generators([1]).generators == (1,)


@given(st.lists(st.integers(2, 20), min_size=1, max_size=4))
def test_closure_matches_brute_force(raw):
    d = 0
    for g in raw:
        d = gcd(d, g)
    if d != 1:
        raw.append(d + 1)  # force cofiniteness
    H = sgp.from_generators(raw)
    bound = 2 * H.frobenius + 2 if H.frobenius >= 0 else 10
    expected = brute_membership(sorted(set(raw)), bound)
    for k in range(bound + 1):
        assert H.contains(k) == (k in expected)
    if H.frobenius >= 0:
        assert H.frobenius == max(k for k in range(bound + 1) if k not in expected)


@given(st.lists(st.integers(2, 15), min_size=1, max_size=3))
def test_closure_invariants(raw):
    d = 0
    for g in raw:
        d = gcd(d, g)
    if d != 1:
        raw.append(d + 1)
    H = sgp.from_generators(raw)
    top = 2 * H.frobenius + 2
    elems = [k for k in range(top + 1) if H.contains(k)]
    for a in elems:
        for b in elems:
            if a + b <= top:
                assert H.contains(a + b)
    for k in range(H.frobenius + 1, top + 1):
        assert H.contains(k)
    assert H.genus == len(H.gaps)


def test_counting_helpers():
    H = sgp.from_generators([3, 7])
    # elements: 0,3,6,7,9,10,12,13,14,...
    assert H.count_upto(9) == 5
    assert H.count_upto(0) == 1
    assert H.count_upto(-1) == 0
    assert H.count_upto(100) == 100 - 6 + 1
    assert H.first_elements(6) == (0, 3, 6, 7, 9, 10)
    assert H.elements_below_conductor == (0, 3, 6, 7, 9, 10)
    assert str(H) == "<3,7>"


# ------------------------------------------------------------ gap sums


def test_gap_sum_examples():
    assert sgp.gap_sum(sgp.from_generators([3, 4])) == 8
    assert sgp.gap_sum(sgp.from_generators([3, 5])) == 14
    assert sgp.gap_sum(sgp.from_generators([1])) == 0


def test_planar_formula_examples():
    assert sgp.planar_gap_sum_formula(3, 4) == 8
    assert sgp.planar_gap_sum_formula(3, 7) == 31
    for g in range(1, 12):
        assert sgp.planar_gap_sum_formula(2, 2 * g + 1) == g * g
        H = sgp.from_generators([2, 2 * g + 1])
        assert H.gaps == tuple(range(1, 2 * g, 2))
    with pytest.raises(ValueError):
        sgp.planar_gap_sum_formula(4, 6)
    with pytest.raises(ValueError):
        sgp.planar_gap_sum_formula(1, 5)


def test_planar_formula_matches_gap_sum():
    for p in range(2, 31):
        for q in range(p + 1, 31):
            if gcd(p, q) == 1:
                assert sgp.planar_gap_sum_formula(p, q) == sgp.gap_sum(
                    sgp.from_generators([p, q])
                )


# ------------------------------------------------- symmetric enumeration


def test_enumerate_symmetric_first_genera():
    (H,) = sgp.enumerate_symmetric(1)
    assert H.generators == (2, 3)
    (H,) = sgp.enumerate_symmetric(2)
    assert H.generators == (2, 5)
    gens3 = {H.generators for H in sgp.enumerate_symmetric(3)}
    assert gens3 == {(3, 4), (2, 7)}


def test_enumerate_symmetric_counts():
    # frozen from the exhaustive pair-assignment oracle
    expected = {1: 1, 2: 1, 3: 2, 4: 3, 5: 3, 6: 6, 7: 8, 8: 7}
    for g, count in expected.items():
        assert len(sgp.enumerate_symmetric(g)) == count


def test_enumerate_symmetric_matches_brute_force():
    for g in range(1, 9):
        got = [H.gaps for H in sgp.enumerate_symmetric(g)]
        assert got == brute_symmetric_gap_sets(g)
        assert len(set(got)) == len(got)


def test_symmetric_biconditional():
    for g in range(1, 13):
        for H in sgp.enumerate_symmetric(g):
            assert H.symmetric
            assert H.frobenius == 2 * g - 1
            for k in range(0, 2 * g):
                assert H.contains(k) == (not H.contains(2 * g - 1 - k))
            # a symmetric semigroup has exactly g elements up to 2g-1
            assert H.count_upto(2 * g - 1) == g


# ------------------------------------------------------ bound filtering


def test_element_sum_filter_genus_six():
    sym = sgp.enumerate_symmetric(6)
    kept = sgp.element_sum_bound_filter(6, sym)
    nonhyp = [r for r in kept if not r.semigroup.hyperelliptic]
    assert len(nonhyp) == 1
    assert nonhyp[0].semigroup.generators == (3, 7)
    assert nonhyp[0].element_sum == 35
    assert nonhyp[0].slack == 0


def test_element_sum_filter_small():
    H = sgp.from_generators([2, 5])
    (rec,) = sgp.element_sum_bound_filter(2, [H])
    assert rec.element_sum == 2
    assert rec.slack == 1


def test_element_sum_filter_hyperelliptic_always_passes():
    for g in range(2, 13):
        H = sgp.from_generators([2, 2 * g + 1])
        (rec,) = sgp.element_sum_bound_filter(g, [H])
        assert rec.element_sum == g * (g - 1)
        assert rec.slack == g - 1


def test_element_sum_filter_genus_check():
    with pytest.raises(ValueError):
        sgp.element_sum_bound_filter(3, [sgp.from_generators([2, 5])])


# ------------------------------------------------- tautological numbers


def test_tautological_coefficient_examples():
    assert sgp.tautological_coefficient(sgp.from_generators([3, 4])) == 18
    assert sgp.tautological_coefficient(sgp.from_generators([2, 3])) == 3
    assert sgp.tautological_coefficient(sgp.from_generators([2, 5])) == 10


def test_tautological_coefficient_positive():
    for g in range(1, 13):
        for H in sgp.enumerate_symmetric(g):
            assert sgp.tautological_coefficient(H) > 0
        assert sgp.tautological_coefficient(sgp.from_generators([2, 2 * g + 1])) > 0
