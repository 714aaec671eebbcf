from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superfock.algebra import (
    BASIS, EVEN_BASIS, ODD_BASIS, GRADING, AlgebraElement, adjoint_action, basis_element, bracket,
    build_structure_constants, check_grading, check_super_antisymmetry, check_super_jacobi, parity,
)
from superfock.scalars import AlphaParam, NaturalAlphaError
from superfock.sl2 import G0Element, NotUnimodularError


def el(**kw):
    return AlgebraElement({k.replace("p", "+").replace("m", "-"): v for k, v in kw.items()})


def test_basis_order_and_parity():
    assert BASIS[:3] == ("E1", "F1", "H1")
    assert BASIS[9] == "u+++" and BASIS[-1] == "u---"
    assert len(EVEN_BASIS) == 9 and len(ODD_BASIS) == 8
    assert all(parity(x) == 0 for x in EVEN_BASIS) and all(parity(x) == 1 for x in ODD_BASIS)
    assert set(GRADING["+"]) == {"E2", "E3", "u-++", "u+++"}
    assert set(GRADING["-"]) == {"F2", "F3", "u+--", "u---"}


def test_sl2_relations(alpha):
    sc = build_structure_constants(alpha)
    for i in (1, 2, 3):
        E, F, H = (basis_element(f"{x}{i}") for x in "EFH")
        assert bracket(sc, H, E) == E * 2
        assert bracket(sc, H, F) == F * -2
        assert bracket(sc, E, F) == H
        for j in (1, 2, 3):
            if j != i:
                for x in "EFH":
                    assert not bracket(sc, E, basis_element(f"{x}{j}"))


def test_odd_odd_hand_value(alpha):
    # -sigma1 H1 - sigma2 H2 - sigma3 H3
    a = alpha.value
    sc = build_structure_constants(alpha)
    want = AlgebraElement({"H1": -(1 + a) / 2, "H2": Fraction(1, 2), "H3": a / 2})
    assert sc.entry("u+++", "u---") == want


def test_odd_square_vanishes(alpha):
    # psi(u+, u+) = 0 kills every term of p(u+++, u+++)
    sc = build_structure_constants(alpha)
    assert not sc.entry("u+++", "u+++")


def test_grading_eigenvalue(alpha):
    sc = build_structure_constants(alpha)
    h = basis_element("H2") + basis_element("H3")
    assert bracket(sc, h, basis_element("u+++")) == basis_element("u+++") * 2
    assert bracket(sc, h, basis_element("u---")) == basis_element("u---") * -2


def test_bracket_zero_and_bilinear(a_neg2):
    sc = build_structure_constants(a_neg2)
    assert not bracket(sc, AlgebraElement(), basis_element("u+-+"))
    assert bracket(sc, basis_element("E1"), basis_element("F1")) == basis_element("H1")


def test_checks_pass(alpha):
    sc = build_structure_constants(alpha)
    for check in (check_super_jacobi, check_super_antisymmetry, check_grading):
        r = check(sc)
        assert r.status == "pass" and r.max_defect == "0", r


def test_jacobi_fails_with_perturbed_sigma():
    a = AlphaParam.parse("-2")
    s1, s2, s3 = a.sigmas
    sc = build_structure_constants(a, sigmas=(s1, s2 + 1, s3))
    r = check_super_jacobi(sc)
    assert r.status == "fail"
    # hand oracle: [u+++, u---] = -sum sigma_i H_i and [H_i, u+++] = u+++, so with
    # [u+++, u+++] = 0 the Jacobi defect on (u+++, u+++, u---) is 2 (sigma1+sigma2+sigma3) u+++
    x, z = basis_element("u+++"), basis_element("u---")
    assert bracket(sc, x, bracket(sc, x, z)) == x * (s1 + s2 + 1 + s3)
    assert r.witness is not None


def test_naturals_rejected():
    with pytest.raises(NaturalAlphaError):
        build_structure_constants(AlphaParam.parse("1"))


def test_structure_json(a_neg2):
    import json

    d = json.loads(build_structure_constants(a_neg2).to_json())
    assert d["basis"] == list(BASIS)


# -- adjoint action ----------------------------------------------------------

I2 = ((1, 0), (0, 1))
DIL = ((Fraction(2), 0), (0, Fraction(1, 2)))


def test_ad_identity(a_neg2):
    g = G0Element.of(I2, I2, I2)
    for x in BASIS:
        assert adjoint_action(g, basis_element(x)) == basis_element(x)


def test_ad_dilation_on_odd():
    g = G0Element.of(DIL, I2, I2)
    assert adjoint_action(g, basis_element("u+++")) == basis_element("u+++") * 2
    assert adjoint_action(g, basis_element("u-++")) == basis_element("u-++") * Fraction(1, 2)
    assert adjoint_action(g, basis_element("E1")) == basis_element("E1") * 4


def test_ad_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        G0Element.of(((2, 0), (0, 2)), I2, I2)


fr = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def unimodular(draw):
    # product of elementary matrices: exact and of determinant one
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(draw(st.integers(1, 3))):
        t = draw(fr)
        e = ((1, t), (0, 1)) if draw(st.booleans()) else ((1, 0), (t, 1))
        m = tuple(tuple(sum(m[i][k] * e[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    if draw(st.booleans()):
        d = draw(st.sampled_from([Fraction(2), Fraction(1, 3), Fraction(-5, 2)]))
        m = tuple(tuple(m[i][j] * (d if i == 0 else 1 / d) for j in range(2)) for i in range(2))
    return m


@given(unimodular(), unimodular(), unimodular(), unimodular(), st.sampled_from(BASIS))
def test_ad_is_homomorphism(a, b, c, d, x):
    g, h = G0Element.of(a, b, c), G0Element.of(d, a, b)
    assert adjoint_action(g @ h, basis_element(x)) == adjoint_action(g, adjoint_action(h, basis_element(x)))


@given(unimodular(), unimodular(), unimodular(), st.sampled_from(BASIS), st.sampled_from(BASIS))
def test_ad_preserves_bracket(a, b, c, x, y):
    sc = build_structure_constants(AlphaParam.parse("-7/3"))
    g = G0Element.of(a, b, c)
    X, Y = basis_element(x), basis_element(y)
    assert adjoint_action(g, bracket(sc, X, Y)) == bracket(sc, adjoint_action(g, X), adjoint_action(g, Y))


@given(st.lists(st.tuples(st.sampled_from(BASIS), fr), max_size=4),
       st.lists(st.tuples(st.sampled_from(BASIS), fr), max_size=4))
def test_antisymmetry_homogeneous(xs, ys):
    sc = build_structure_constants(AlphaParam.parse("1/2"))
    for px in (0, 1):
        for py in (0, 1):
            X = AlgebraElement({n: c for n, c in xs if parity(n) == px})
            Y = AlgebraElement({n: c for n, c in ys if parity(n) == py})
            s = 1 if px and py else -1
            assert bracket(sc, X, Y) == bracket(sc, Y, X) * s
