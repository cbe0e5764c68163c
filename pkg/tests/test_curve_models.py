"""Section-count models: closed forms, Riemann-Roch regime, filtrations.

The models answer h0 without a branch algebra, so every closed form here
is checked against either a direct count (semigroup membership), the
algebra route (section spaces), or the Riemann-Roch line.
"""

import pytest
from hypothesis import given, strategies as st

import gmspectra.branch_algebra as ba
import gmspectra.curve_models as cm
import gmspectra.semigroup as sg
from gmspectra import catalog
from gmspectra.signature import derive


# ------------------------------------------------------------- unibranch


def test_unibranch_37():
    model = cm.UnibranchModel(sg.from_generators((3, 7)))
    assert model.genus == 6
    assert model.h0((9,)) == 5  # {0, 3, 6, 7, 9}
    assert model.h0((0,)) == 1
    assert model.h0((-1,)) == 0
    assert model.h0((11,)) == 6  # beyond 2g-2: Riemann-Roch
    with pytest.raises(ValueError):
        model.h0((3, 1))


def test_unibranch_matches_membership_count():
    for gens in [(2, 5), (2, 9), (3, 4), (3, 5), (4, 5, 6), (3, 7)]:
        H = sg.from_generators(gens)
        model = cm.UnibranchModel(H)
        for k in range(0, 2 * H.genus - 1):
            assert model.h0((k,)) == sum(1 for j in range(k + 1) if H.contains(j))


# --------------------------------------------------------- hyperelliptic


def test_hyperelliptic_weierstrass_canonical():
    for g in range(2, 7):
        model = cm.HyperellipticModel(g, ("w",))
        assert model.h0((2 * g - 2,)) == g
        assert model.h0((2 * g - 1,)) == g  # first Riemann-Roch degree
        assert model.h0((1,)) == 1
        assert model.h0((2,)) == 2


def test_hyperelliptic_pair_ladder():
    # conjugate pair: h0((g - lam)(p1 + p2)) = g - lam + 1 down to the constants
    g = 5
    model = cm.HyperellipticModel(g, ("pair:1", "pair:1"))
    for lam in range(0, g + 1):
        c = g - lam
        expected = g + 1 - lam if lam >= 1 else g + 1  # lam = 0 is already RR
        assert model.h0((c, c)) == expected


def test_hyperelliptic_free_points_inert():
    g = 4
    model = cm.HyperellipticModel(g, ("w", "free"))
    # below Riemann-Roch a general point changes nothing
    assert model.h0((4, 1)) == model.h0((4, 0)) == 3
    # the two-branch family filtration at level two: dims 3g - lam
    sig = derive((2 * g - 2, 0))
    dims = cm.filtration_dims(model, sig, 2)
    assert dims[0] == 3 * (g - 1) + 2 * 2
    for lam in range(1, 2 * g + 1):
        assert dims[lam] == 3 * g - lam


def test_hyperelliptic_mixed_tags():
    # one Weierstrass point and one pair on genus 6
    model = cm.HyperellipticModel(6, ("w", "pair:1", "pair:1"))
    assert model.h0((2, 1, 1)) == 3
    assert model.h0((3, 1, 1)) == 3
    assert model.h0((0, 0, 0)) == 1
    assert model.h0((-2, 1, 0)) == 0  # negative total degree


def test_hyperelliptic_tag_validation():
    with pytest.raises(ValueError):
        cm.HyperellipticModel(3, ("w", "pair:1")).h0((1, 1))
    with pytest.raises(ValueError):
        cm.HyperellipticModel(3, ("w", "wat")).h0((1, 1))
    with pytest.raises(ValueError):
        cm.HyperellipticModel(3, ("w",)).h0((1, 1))


# ---------------------------------------------------------- clifford-max


def test_clifford_max_profile():
    g = 5
    model = cm.CliffordMaxModel(g)
    assert model.h0((-1,)) == 0
    assert model.h0((0,)) == 1
    assert [model.h0((d,)) for d in range(1, 2 * g - 2)] == [
        (d + 1) // 2 for d in range(1, 2 * g - 2)
    ]
    assert model.h0((2 * g - 2,)) == g  # canonical degree
    assert model.h0((2 * g - 1,)) == g
    assert model.h0((3 * g,)) == 2 * g + 1


def test_clifford_max_principal_stratum():
    # all-ones signature: only three filtration levels survive
    for g in (3, 5, 8):
        sig = derive((1,) * (2 * g - 2))
        dims = cm.filtration_dims(cm.CliffordMaxModel(g), sig, 1)
        assert dims == (3 * g - 3, g, 1)


# --------------------------------------------------------------- override


def test_override_table():
    base = cm.CliffordMaxModel(5)
    model = cm.OverrideModel(base, (((3, 0), 2), ((1, 0), 1)))
    assert model.genus == 5
    assert model.h0((3, 0)) == 2
    assert model.h0((1, 0)) == 1
    assert model.h0((4, 0)) == base.h0((4, 0))


def test_override_special_locus_filtration():
    # the (7,1) locus: every level meets the nonhyperelliptic cap, so the
    # override entry only pins what genericity would lose
    e = catalog.get("H(7,1)-special")
    sig = derive(e.signature)
    divisor, value = e.locus_condition
    model = cm.OverrideModel(cm.CliffordMaxModel(sig.genus), ((divisor, value),))
    dims = cm.filtration_dims(model, sig, 1)
    assert sum(dims[1:]) == e.expected.chi1_log == 20
    # and the algebra computes the same filtration
    alg_dims = cm.filtration_dims(cm.AlgebraModel(e.algebra()), sig, 1)
    assert dims == alg_dims
    assert cm.AlgebraModel(e.algebra()).h0(divisor) == value


def test_algebra_model_sections():
    e = catalog.get("E7")
    model = cm.AlgebraModel(e.algebra())
    assert model.genus == 3
    assert model.h0((0, 0)) == 1
    assert model.h0((3, 1)) == 3  # the zero divisor of the form is canonical


# ---------------------------------------------------------- filtrations


def test_filtration_level_zero_law():
    models = [
        (cm.UnibranchModel(sg.from_generators((3, 5))), derive((6,))),
        (cm.HyperellipticModel(3, ("pair:1", "pair:1")), derive((2, 2))),
        (cm.CliffordMaxModel(4), derive((3, 3))),
    ]
    for model, sig in models:
        g, n = sig.genus, sig.n
        for m in (1, 2, 3):
            dims = cm.filtration_dims(model, sig, m)
            assert len(dims) == m * sig.ell + 1
            expected0 = g - 1 + n if m == 1 else (2 * m - 1) * (g - 1) + m * n
            assert dims[0] == expected0
            assert dims[-1] == 1
            assert all(a >= b for a, b in zip(dims, dims[1:]))


def test_filtration_genus_mismatch():
    with pytest.raises(ValueError):
        cm.filtration_dims(cm.CliffordMaxModel(3), derive((6,)), 1)
    with pytest.raises(ValueError):
        cm.filtration_dims(cm.CliffordMaxModel(4), derive((6,)), 0)


def test_filtration_genus_one():
    dims = cm.filtration_dims(cm.UnibranchModel(sg.from_generators((2, 3))), derive((0,)), 1)
    assert dims == (1, 1)


# ------------------------------------------------------------ properties


DEGREES = st.integers(min_value=0, max_value=24)


@given(DEGREES)
def test_unibranch_monotone(k):
    model = cm.UnibranchModel(sg.from_generators((3, 7)))
    assert 0 <= model.h0((k,)) <= model.h0((k + 1,))


@given(st.tuples(DEGREES, DEGREES, DEGREES), st.integers(0, 2))
def test_hyperelliptic_monotone(divisor, slot):
    model = cm.HyperellipticModel(5, ("w", "pair:1", "pair:1"))
    up = tuple(c + (1 if i == slot else 0) for i, c in enumerate(divisor))
    assert 0 <= model.h0(divisor) <= model.h0(up)


@given(st.tuples(DEGREES, DEGREES), st.integers(0, 1))
def test_clifford_max_monotone(divisor, slot):
    model = cm.CliffordMaxModel(6)
    up = tuple(c + (1 if i == slot else 0) for i, c in enumerate(divisor))
    assert 0 <= model.h0(divisor) <= model.h0(up)


def test_riemann_roch_regime_agreement():
    # every model settles on deg - g + 1 beyond the canonical degree
    for g in range(2, 9):
        models = [
            cm.HyperellipticModel(g, ("w", "free")),
            cm.CliffordMaxModel(g),
            cm.UnibranchModel(sg.from_generators((2, 2 * g + 1))),
        ]
        for deg in range(2 * g - 1, 6 * g + 1):
            for model in models:
                if model.kind == "unibranch":
                    value = model.h0((deg,))
                else:
                    value = model.h0((deg - 1, 1) if model.kind == "hyperelliptic" else (deg, 0))
                assert value == deg - g + 1, (g, deg, model.kind)


# ------------------------------------------------------------- JSON spec


def test_model_from_spec():
    m1 = cm.model_from_spec({"kind": "unibranch", "generators": [3, 7]})
    assert isinstance(m1, cm.UnibranchModel) and m1.genus == 6
    m2 = cm.model_from_spec(
        {"kind": "hyperelliptic", "genus": 4, "tags": ["w", "pair:1", "pair:1"]}
    )
    assert m2.h0((2, 0, 0)) == 2
    m3 = cm.model_from_spec({"kind": "clifford-max", "genus": 5})
    assert m3.h0((8,)) == 5
    m4 = cm.model_from_spec(
        {
            "kind": "override",
            "base": {"kind": "clifford-max", "genus": 5},
            "table": [{"divisor": [3, 0], "h0": 2}],
        }
    )
    assert m4.h0((3, 0)) == 2 and m4.h0((5, 0)) == 3
    with pytest.raises(ValueError):
        cm.model_from_spec({"kind": "mystery"})
