"""Tests for the exact scalar field (rational functions in t over Q(i))."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfock import scalar
from qfock.scalar import (
    DegreeMeta,
    GaussianRational,
    LaurentPoly,
    PoleError,
    Scalar,
    from_rational,
    q_power,
    qbracket,
    qnum,
    t_power,
)

ONE = scalar.ONE
ZERO = scalar.ZERO
Q = q_power(1)  # q = t^4
T = t_power(1)


def gr(a, b=0):
    return GaussianRational(Fraction(a), Fraction(b))


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


def test_gauss_basic_arithmetic():
    a = gr(1, 2)
    b = gr(3, -1)
    assert a + b == gr(4, 1)
    assert a * b == gr(1 * 3 - 2 * (-1), 1 * (-1) + 2 * 3)
    assert a - a == gr(0)
    assert (a * a.inv()) == gr(1)
    assert gr(0, 1) * gr(0, 1) == gr(-1)


def test_gauss_division_and_pow():
    a = gr(2, 3)
    assert a / a == gr(1)
    assert a**0 == gr(1)
    assert a**3 == a * a * a
    assert a**-2 == (a * a).inv()
    with pytest.raises(ZeroDivisionError):
        gr(0).inv()


def test_gauss_str():
    assert str(gr(3, 0)) == "3"
    assert str(gr(0, 1)) == "i"
    assert str(gr(0, -1)) == "-i"
    assert str(gr(Fraction(1, 2), Fraction(-3, 4))) == "(1/2-3/4*i)"


# ---------------------------------------------------------------------------
# Constructors and q-numbers
# ---------------------------------------------------------------------------


def test_q_power_base_identification():
    assert q_power(1) == t_power(4)
    assert q_power(Fraction(-1, 2)) == t_power(-2)
    assert q_power(Fraction(1, 4)) == T
    with pytest.raises(ValueError):
        q_power(Fraction(1, 3))


def test_qnum_small_values():
    assert qnum(0) == ZERO
    assert qnum(1) == ONE
    assert qnum(2) == ONE + Q
    assert qnum(3) == ONE + Q + Q * Q
    # negative arguments follow (1 - q^x)/(1 - q)
    assert qnum(-1) == (ONE - q_power(-1)) / (ONE - Q)
    assert qnum(-2) == -(q_power(-1) + q_power(-2))


def test_qbracket_values():
    # frozen from expanding (q^2 - q^-2)/(q - q^-1) by polynomial division
    assert qbracket(2) == Q + q_power(-1)
    assert qbracket(1) == ONE
    assert qbracket(0) == ZERO
    assert qbracket(-3) == -qbracket(3)
    # definition holds as a rational identity
    for x in range(-5, 6):
        lhs = qbracket(x) * (Q - q_power(-1))
        assert lhs == q_power(x) - q_power(-x)


def test_qbracket_half_base():
    assert qbracket(2, base=Fraction(1, 2)) == q_power(Fraction(1, 2)) + q_power(
        Fraction(-1, 2)
    )
    # (x)_q == [x]_{q^(1/2)} * q^((x-1)/2) for all x
    for x in range(0, 9):
        assert qnum(x) == qbracket(x, base=Fraction(1, 2)) * q_power(
            Fraction(x - 1, 2)
        )


def test_qbracket_limit_is_x():
    for x in range(-8, 9):
        assert qbracket(x).limit_at_one() == gr(x)


# ---------------------------------------------------------------------------
# Field arithmetic and canonical form
# ---------------------------------------------------------------------------


def test_additive_inverse():
    assert T + (-T) == ZERO


def test_multiplicative_inverse_through_q():
    s = (ONE - Q).inv()
    assert s * (ONE - Q) == ONE


def test_inv_canonical_cross_multiply():
    s = t_power(2) + ONE
    r = s.inv()
    assert r * s == ONE
    # canonical denominator: lowest exponent zero, leading coefficient one
    assert r.den.min_exp == 0
    assert r.den.lead_coeff() == scalar.G_ONE


def test_monomial_denominators_are_absorbed():
    s = ONE / t_power(3)
    assert s == t_power(-3)
    assert s.den == scalar.P_ONE


def test_eval_at_examples():
    half = gr(Fraction(1, 2))
    s = (ONE - Q).inv()
    assert s.eval_at(half) == gr(Fraction(16, 15))  # q = 1/16
    assert t_power(3).eval_at(gr(2)) == gr(8)
    with pytest.raises(PoleError):
        (ONE / (T - ONE)).eval_at(gr(1))
    with pytest.raises(ValueError):
        T.eval_at(gr(0))


def test_limit_at_one_examples():
    s = (ONE - Q) / (ONE - Q * Q)
    assert s.limit_at_one() == gr(Fraction(1, 2))
    assert qnum(3).limit_at_one() == gr(3)
    with pytest.raises(PoleError):
        (ONE / (ONE - Q)).limit_at_one()


def test_degree_bounds_examples():
    assert (t_power(3) + t_power(-1)).degree_bounds() == (4, 0)
    assert (ONE / (ONE - Q)).degree_bounds() == (0, 4)
    assert ZERO.degree_bounds() == (0, 0)


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

_coeffs = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
).map(lambda f: GaussianRational(f))


@st.composite
def scalars(draw, allow_zero=True):
    n_terms = draw(st.integers(min_value=0 if allow_zero else 1, max_value=3))
    num = {}
    for _ in range(n_terms):
        e = draw(st.integers(min_value=-6, max_value=6))
        num[e] = draw(_coeffs)
    d_terms = draw(st.integers(min_value=1, max_value=2))
    den = {}
    for _ in range(d_terms):
        e = draw(st.integers(min_value=0, max_value=4))
        den[e] = draw(_coeffs)
    dp = LaurentPoly(den)
    if not dp:
        dp = scalar.P_ONE
    s = Scalar(LaurentPoly(num), dp)
    if not allow_zero and not s:
        s = s + ONE
    return s


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(scalars(allow_zero=False))
def test_inverse_law(a):
    assert a * a.inv() == ONE


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_equality_matches_cross_multiplication(a, b):
    structural = a == b
    cross = a.num * b.den == b.num * a.den
    assert structural == cross


@settings(max_examples=40, deadline=None)
@given(scalars(), scalars())
def test_eval_homomorphism(a, b):
    t0 = gr(Fraction(2, 3))
    try:
        va, vb, vab = a.eval_at(t0), b.eval_at(t0), (a * b).eval_at(t0)
    except PoleError:
        return
    assert vab == va * vb


@settings(max_examples=60, deadline=None)
@given(scalars(allow_zero=False))
def test_canonical_form_is_stable(a):
    # re-normalizing the stored pair reproduces the same structure
    b = Scalar(a.num, a.den)
    assert b.num == a.num and b.den == a.den
    # multiplying num and den by a common factor does not change the value
    f = t_power(2) + from_rational(3)
    c = Scalar(a.num * f.num, a.den * f.num)
    assert c == a


# ---------------------------------------------------------------------------
# Degree metadata
# ---------------------------------------------------------------------------


def test_degree_meta_mul_adds_intervals():
    a = DegreeMeta.of(t_power(-2) + t_power(3))
    b = DegreeMeta.of(ONE / (ONE - Q))
    m = a * b
    assert (m.nlo, m.nhi) == (-2, 3)
    assert (m.dlo, m.dhi) == (0, 4)


def test_degree_meta_add_clears_denominators():
    a = DegreeMeta.of(t_power(5))
    b = DegreeMeta.of(ONE / (ONE - Q))
    m = a + b
    assert m.nlo == 0 and m.nhi == 9
    assert m.cleared_num_span == (9 + 4) - 0


def test_degree_meta_conservative_on_actual_sum():
    a = t_power(5)
    b = ONE / (ONE - Q)
    m = DegreeMeta.of(a) + DegreeMeta.of(b)
    s = a + b
    nlo, nhi = s.num_interval()
    dlo, dhi = s.den_interval()
    assert m.nlo <= nlo and nhi <= m.nhi
    assert m.dlo <= dlo and dhi <= m.dhi
