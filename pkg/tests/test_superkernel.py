from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superfock.scalars import (
    I, ONE, ZERO, AlphaParam, GaussianRational, NaturalAlphaError, as_scalar, pochhammer, sign,
)
from superfock.superpoly import (
    PolyOp, SuperMonomial, SuperPolynomial, multiply, partial, variable,
)

z1, z2, z3, z4 = (variable(i) for i in (1, 2, 3, 4))


# -- scalars ---------------------------------------------------------------

def test_gaussian_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(-2, Fraction(1, 3))
    assert a + b == GaussianRational(Fraction(-3, 2), Fraction(10, 3))
    assert a * b == GaussianRational(-2, Fraction(-35, 6))
    assert (a / b) * b == a
    assert I * I == -ONE
    assert a.conjugate() == GaussianRational(Fraction(1, 2), -3)
    assert a.abs2() == Fraction(37, 4)


def test_gaussian_parse_roundtrip():
    for text in ("1/2+3 i", "-7/3", "2 i", "0"):
        x = GaussianRational.parse(text)
        assert GaussianRational.parse(str(x)) == x
    assert GaussianRational.parse("1/2-1/3 i") == GaussianRational(Fraction(1, 2), Fraction(-1, 3))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_real_hash_matches_fraction():
    assert hash(GaussianRational(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert GaussianRational(Fraction(3, 4)) == Fraction(3, 4)


big = st.integers(min_value=1, max_value=2**256).flatmap(
    lambda n: st.integers(min_value=1, max_value=2**256).map(lambda d: Fraction(n, d))
)


@given(big, big, st.booleans())
def test_rational_exactness_256_bit(a, b, neg):
    a = -a if neg else a
    x = GaussianRational(a / b, b / a)
    assert (a / b) * (b / a) == 1
    assert x * (ONE / x) == ONE


def test_pochhammer_examples():
    a = Fraction(-2)
    assert pochhammer(-a, 0) == 1
    assert pochhammer(-a, 2) == 6
    assert pochhammer(-a, 1) == -a
    assert pochhammer(Fraction(-3), 4) == 0
    assert pochhammer(I, 2) == I * (I + 1)


def test_sign():
    assert (sign(Fraction(-1, 3)), sign(0), sign(5)) == (-1, 0, 1)


def test_alpha_param():
    a = AlphaParam.parse("-7/3")
    s1, s2, s3 = a.sigmas
    assert s1 + s2 + s3 == 0
    assert (s1, s2, s3) == (Fraction(-2, 3), Fraction(-1, 2), Fraction(7, 6))
    assert a.lam == a.value
    for bad in ("0", "1", "3", "4/2"):
        with pytest.raises(NaturalAlphaError):
            AlphaParam.parse(bad)
    assert AlphaParam.parse("2", allow_natural=True).value == 2


# -- superpolynomials ------------------------------------------------------

def test_multiply_examples():
    assert multiply(z3, z4) == SuperPolynomial.monomial(0, 0, 1, 1)
    assert multiply(z4, z3) == -SuperPolynomial.monomial(0, 0, 1, 1)
    assert multiply(z3, z3) == SuperPolynomial()


def test_partial_examples():
    assert partial(4, z3 * z4) == -z3
    assert partial(1, z1 * z1) == z1 * 2
    assert partial(3, z1 * z4) == SuperPolynomial()
    assert partial(3, z3 * z4) == z4


def test_monomial_shape():
    m = SuperMonomial(2, 1, 1, 0)
    assert m.parity == 1 and m.degree == 4
    assert SuperMonomial(1, 0, 1, 1).parity == 0


def test_zero_coefficients_pruned():
    p = z1 + z2 - z1
    assert p == z2 and len(p) == 1


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def homogeneous(draw, parity=None):
    par = draw(st.integers(0, 1)) if parity is None else parity
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        c, d = draw(st.sampled_from([(0, 0), (1, 1)] if par == 0 else [(1, 0), (0, 1)]))
        m = SuperMonomial(draw(st.integers(0, 3)), draw(st.integers(0, 2)), c, d)
        terms[m] = GaussianRational(draw(coeffs), draw(coeffs))
    return SuperPolynomial(terms)


@given(homogeneous(), homogeneous())
def test_supercommutative(p, q):
    s = -1 if p.parity == 1 and q.parity == 1 else 1
    assert multiply(p, q) == multiply(q, p).scale(s)


@given(homogeneous(), homogeneous(), homogeneous())
def test_associative(p, q, r):
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


@given(st.integers(1, 4), st.integers(1, 4), homogeneous())
def test_derivatives_supercommute(i, j, p):
    s = -1 if i > 2 and j > 2 else 1
    assert partial(i, partial(j, p)) == partial(j, partial(i, p)).scale(s)


@given(st.integers(1, 4), homogeneous())
def test_canonical_relation(i, p):
    # [d_i, z_i} = 1: anticommutator for odd i, commutator for even i
    zi = variable(i)
    s = -1 if i > 2 else 1
    assert partial(i, multiply(zi, p)) - multiply(zi, partial(i, p)).scale(s) == p


@given(st.integers(3, 4), homogeneous(), homogeneous())
def test_odd_leibniz(i, p, q):
    s = -1 if p.parity == 1 else 1
    assert partial(i, multiply(p, q)) == multiply(partial(i, p), q) + multiply(p, partial(i, q)).scale(s)


def test_polyop_composition_order():
    op = PolyOp.z(1) @ PolyOp.d(1)  # right operand acts first
    assert op(z1 * z1) == z1 * z1 * 2
    assert (PolyOp.d(1) @ PolyOp.z(1))(z2) == z2
