import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm

from superfock.checks import (
    a2_unitarity, bf_numeric, check_K2_bound, check_K3_continuity, check_A3_estimate,
    check_ad_compatibility, check_additivity, check_superunitary, exp_consistency, laguerre_residual,
)
from superfock.fock import FockVector
from superfock.group import (
    NumericFockVector, OneParamElement, TruncationWarning, act_A2_expm, act_A2_laguerre, act_closed_form,
    act_word, laguerre_coeffs, parse_word, word_for_g0,
)
from superfock.scalars import AlphaParam
from superfock.sl2 import (
    A, G0Element, GroupElementSL2, K, NotUnimodularError, cartan_compose, cartan_decompose, exp_sl2,
)

NEG = ("-1/2", "-2", "-7/3")
POS = ("1/2", "3/2", "5/2")


# -- SL(2) -----------------------------------------------------------------

def test_exp_sl2_examples():
    assert np.allclose(exp_sl2(0, 1, 0), np.diag([math.e, 1 / math.e]), atol=1e-15)
    assert np.allclose(exp_sl2(0.7, 0, 0), K(0.7), atol=1e-15)
    X = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert np.array_equal(exp_sl2(1, 0, 1), np.eye(2) + X)
    assert np.max(np.abs(exp_sl2(1, 0, 1) - expm(X))) <= 1e-12


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_exp_sl2_matches_expm(k, a, l):
    X = np.array([[a, l - k], [l + k, -a]])
    assert np.max(np.abs(exp_sl2(k, a, l) - expm(X))) <= 1e-10 * max(1.0, np.abs(expm(X)).max())


def test_cartan_examples():
    assert cartan_decompose(np.eye(2)) == (0.0, 0.0, 0.0)
    t1, a, t2 = cartan_decompose(A(0.8))
    assert abs(a - 0.8) < 1e-12 and abs(t1) < 1e-12 and abs(t2) < 1e-12
    with pytest.raises(NotUnimodularError):
        cartan_decompose(np.diag([2.0, 2.0]))


@st.composite
def unimodular(draw):
    t1 = draw(st.floats(-math.pi, math.pi))
    a = draw(st.floats(0, 3))
    t2 = draw(st.floats(-math.pi, math.pi))
    return K(t1) @ A(a) @ K(t2)


@given(unimodular())
def test_cartan_reconstructs(g):
    t1, a, t2 = cartan_decompose(g)
    assert a >= 0 and -math.pi < t1 <= math.pi and -math.pi < t2 <= math.pi
    assert np.max(np.abs(cartan_compose(t1, a, t2) - g)) <= 1e-12 * max(1.0, np.abs(g).max() ** 2)


def test_group_element_validation():
    g = GroupElementSL2(((2, 1), (1, 1)))
    assert g.exact and (g @ g.inverse()) == GroupElementSL2.identity()
    with pytest.raises(NotUnimodularError):
        GroupElementSL2(((1, 1), (1, 1)))
    GroupElementSL2(((1.0, 0.0), (0.0, 1.0 + 1e-13)))
    with pytest.raises(ValueError):
        GroupElementSL2(((1, 0), (0, 1)), factor=4)


# -- closed forms ------------------------------------------------------------

def nv(fock, N):
    return NumericFockVector.from_fock(fock, N)


def test_closed_form_examples():
    alpha = AlphaParam.parse("-2")
    t = 0.4
    out = act_closed_form(OneParamElement("K2", t), nv(FockVector.basis(1, 1), 3), alpha)
    assert np.isclose(out.coeffs[1], np.exp(1j * t * (-2 - 2)))
    out = act_closed_form(OneParamElement("K1", math.pi / 2), nv(FockVector.basis(3, 1), 2), alpha)
    assert np.allclose(out.coeffs, nv(FockVector.basis(4, 1).scale(Fraction(-1, 2)), 2).coeffs, atol=1e-15)
    out = act_closed_form(OneParamElement("A3", 0.5), nv(FockVector.basis(1, 0), 2), alpha)
    assert np.isclose(out.coeffs[0], math.cosh(0.5)) and np.isclose(out.coeffs[2], math.sinh(0.5))
    with pytest.raises(ValueError):
        act_closed_form(OneParamElement("A2", 0.1), out, alpha)


@pytest.mark.parametrize("family", ["K1", "K2", "K3", "A1", "A3"])
@pytest.mark.parametrize("alpha_text", ["-2", "1/2"])
def test_exp_consistency(family, alpha_text):
    alpha = AlphaParam.parse(alpha_text)
    for t in (0.0, 0.3, 0.7, 1.2):
        assert exp_consistency(family, t, 12, alpha) <= 1e-10


@pytest.mark.parametrize("family", ["K1", "K2", "K3", "A1", "A3"])
def test_superunitary(family, alpha):
    assert check_superunitary(family, alpha, 1e-10, seed=1).status == "pass"


@pytest.mark.parametrize("family", ["K1", "K2", "K3", "A1", "A3"])
def test_additivity(family, alpha):
    assert check_additivity(family, alpha, 1e-12, seed=2).status == "pass"


@pytest.mark.parametrize("alpha_text", NEG)
def test_additivity_A2(alpha_text):
    assert check_additivity("A2", AlphaParam.parse(alpha_text), 1e-10, seed=3).status == "pass"


def test_continuity_identities(alpha):
    for check in (check_K3_continuity, check_K2_bound, check_A3_estimate):
        assert check(alpha, 1e-10, seed=4).status == "pass"


def test_ad_compatibility(alpha):
    assert check_ad_compatibility(alpha, 4, 1e-10).status == "pass"


def test_A3_symbolic_hyperbolic_identity():
    # with cosh = 5/4, sinh = 3/4 each block preserves w|x|^2 - w|y|^2 exactly
    ch, sh = Fraction(5, 4), Fraction(3, 4)
    assert ch * ch - sh * sh == 1
    x, y = Fraction(2, 3), Fraction(-7, 5)
    assert (ch * x + sh * y) ** 2 - (sh * x + ch * y) ** 2 == x * x - y * y


def test_bf_numeric_matches_exact():
    alpha = AlphaParam.parse("-7/3")
    p = FockVector.basis(3, 2).scale(2) + FockVector.basis(1, 1)
    q = FockVector.basis(4, 2) + FockVector.basis(1, 1).scale(3)
    from superfock.fock import bessel_fischer

    assert np.isclose(bf_numeric(nv(p, 3), nv(q, 3), alpha), complex(bessel_fischer(p, q, alpha)))


# -- words -------------------------------------------------------------------

def test_parse_word():
    w = parse_word("K2(0.3) A3(-1.2)  A1(1/2)")
    assert [str(e) for e in w] == ["K2(0.3)", "A3(-1.2)", "A1(0.5)"]
    assert parse_word("") == []
    for bad in ("K4(1)", "K2(x)", "K2 0.3"):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_word_examples():
    alpha = AlphaParam.parse("-2")
    rng = np.random.default_rng(0)
    f = NumericFockVector.random(6, alpha, rng)
    assert act_word([], f, alpha).allclose(f, 0)
    assert act_word("A1(0.4) A1(-0.4)", f, alpha).allclose(f, 1e-12)
    assert act_word("K2(0.2) K2(0.5)", f, alpha).allclose(act_word("K2(0.7)", f, alpha), 1e-12)


def test_word_order_last_acts_first():
    alpha = AlphaParam.parse("-2")
    f = nv(FockVector.basis(3, 1), 2)
    # A1 scales z3 by e^{-t}; K1(pi/2) then sends z3 -> -z4/2
    a = act_word("K1(1.5707963267948966) A1(1)", f, alpha)
    b = act_closed_form(OneParamElement("K1", math.pi / 2),
                        act_closed_form(OneParamElement("A1", 1.0), f, alpha), alpha)
    assert a.allclose(b, 1e-15)


def test_word_for_g0_reproduces_matrices():
    rng = np.random.default_rng(3)
    mats = []
    for _ in range(3):
        m = rng.standard_normal((2, 2))
        if np.linalg.det(m) < 0:
            m[:, 0] *= -1
        mats.append(m / math.sqrt(np.linalg.det(m)))
    word = word_for_g0(G0Element(tuple(GroupElementSL2(m.tolist(), i + 1) for i, m in enumerate(mats))))
    for i, m in enumerate(mats, start=1):
        prod = np.eye(2)
        for e in word:
            if e.family[1] == str(i):
                prod = prod @ (K(e.t) if e.family[0] == "K" else A(e.t))
        assert np.allclose(prod, m, atol=1e-12)


def test_json_roundtrip():
    alpha = AlphaParam.parse("1/2")
    f = NumericFockVector.random(4, alpha, np.random.default_rng(5))
    g = NumericFockVector.from_json_dict(json.loads(f.to_json()))
    assert g.allclose(f, 0)
    with pytest.raises(ValueError):
        NumericFockVector.from_json_dict({"f9": []})


# -- A2 ----------------------------------------------------------------------

def test_A2_identity_at_zero():
    alpha = AlphaParam.parse("-2")
    f = NumericFockVector.random(3, alpha, np.random.default_rng(0))
    assert act_A2_expm(0.0, f, alpha).vector.allclose(f.resized(19), 0)


def test_A2_matches_exact_generator_on_constant():
    # d/dt at t = 0 is rho(H2) 1 = z1
    alpha = AlphaParam.parse("-2")
    f = NumericFockVector.basis(1, 0, 0)
    h = 1e-6
    out = act_A2_expm(h, f, alpha, N=20).vector
    assert abs(out.coeffs[1] / h - 1) < 1e-5


@pytest.mark.parametrize("alpha_text", NEG)
def test_A2_unitary_for_negative_alpha(alpha_text):
    nd, ad, band = a2_unitarity(AlphaParam.parse(alpha_text), seed=0)
    assert nd <= 1e-8 and ad <= 1e-8 and band <= 1e-8


@pytest.mark.parametrize("alpha_text", POS)
def test_A2_not_unitary_for_positive_alpha(alpha_text):
    nd, ad, _ = a2_unitarity(AlphaParam.parse(alpha_text), seed=0)
    assert nd >= 1e-3 and ad >= 1e-3


def test_A2_truncation_warning():
    alpha = AlphaParam.parse("-2")
    f = NumericFockVector.basis(1, 6, 6)
    with pytest.warns(TruncationWarning):
        r = act_A2_expm(3.0, f, alpha, N=8, padding=4)
    assert not r.truncated_ok


def _laguerre_recurrence(k, a):
    # (n+1) L_{n+1}(y) = (2n+1+a-y) L_n(y) - (n+a) L_{n-1}(y), coefficients in y
    prev, cur = [Fraction(1)], [1 + a, Fraction(-1)]
    if k == 0:
        return prev
    for n in range(1, k):
        nxt = [Fraction(0)] * (n + 2)
        for i, c in enumerate(cur):
            nxt[i] += (2 * n + 1 + a) * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= (n + a) * c
        prev, cur = cur, [c / (n + 1) for c in nxt]
    return cur


@pytest.mark.parametrize("a", [Fraction(-3, 2), Fraction(1, 3), Fraction(-7, 2), Fraction(-1, 2)])
def test_laguerre_coeffs_against_recurrence(a):
    for k in range(8):
        # L_k(2x): the coefficient of x^i is 2^i times that of y^i
        want = [c * 2 ** i for i, c in enumerate(_laguerre_recurrence(k, a))]
        assert laguerre_coeffs(k, a) == want


def test_laguerre_coeffs_against_scipy():
    from scipy.special import eval_genlaguerre

    xs = np.linspace(-1, 2, 7)
    for k in range(6):
        for a in (Fraction(1, 3), Fraction(-1, 2), Fraction(5, 2)):
            c = laguerre_coeffs(k, a)
            mine = sum(float(ci) * xs ** i for i, ci in enumerate(c))
            assert np.allclose(mine, eval_genlaguerre(k, float(a), 2 * xs), rtol=1e-12, atol=1e-12)


def test_laguerre_k1_hand_value():
    # L_1^{(a)}(2x) = 1 + a - 2x
    a = Fraction(-3, 2)
    assert laguerre_coeffs(1, a) == [1 + a, -2]


@pytest.mark.parametrize("alpha_text", ["1/2", "5/2"])
def test_laguerre_residual_confined_to_band(alpha_text):
    alpha = AlphaParam.parse(alpha_text)
    for fam in (1, 2, 3, 4):
        for k in range(0 if fam < 3 else 1, 6):
            interior, lowest = laguerre_residual(k, fam, alpha, 40)
            assert interior == 0 and lowest >= 40


def test_act_A2_laguerre():
    alpha = AlphaParam.parse("1/2")
    out = act_A2_laguerre(1.0, {(1, 0): 1.0, (3, 2): 2.0}, alpha)
    assert math.isclose(out[(1, 0)], math.exp(-0.5))
    assert math.isclose(out[(3, 2)], 2 * math.exp(4 - 0.5 - 1))
    with pytest.raises(ValueError):
        act_A2_laguerre(1.0, {}, AlphaParam.parse("-2"))
