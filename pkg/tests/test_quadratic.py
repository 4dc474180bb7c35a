from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from neutralsets.errors import InputError
from neutralsets.models.quadratic import QuadraticField, QuadraticReal, golden_alpha

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


@st.composite
def quadratics(draw, d=5):
    return QuadraticReal(draw(rationals), draw(rationals), d)


@settings(max_examples=200)
@given(quadratics(), quadratics())
def test_addition_is_exact(x, y):
    assert (x + y) - y == x


@settings(max_examples=200)
@given(quadratics(), quadratics())
def test_division_is_exact(x, y):
    assume(not y.is_zero())
    assert (x * y) / y == x


@settings(max_examples=1000)
@given(quadratics(d=7))
def test_sign_matches_high_precision(x):
    with mpmath.workdps(60):
        value = mpmath.mpf(x.p.numerator) / x.p.denominator \
            + mpmath.mpf(x.q.numerator) / x.q.denominator * mpmath.sqrt(7)
        expected = 0 if x.is_zero() else (1 if value > 0 else -1)
    assert x.sign() == expected


def test_sign_near_cancellation():
    # 2207^2 - 5 * 987^2 = 4: tiny positive value
    assert QuadraticReal(2207, -987, 5).sign() == 1
    assert QuadraticReal(-2207, 987, 5).sign() == -1


def test_golden_alpha():
    alpha = golden_alpha()
    assert 0 < alpha < Fraction(1, 2)
    assert alpha * alpha - 3 * alpha + 1 == 0
    assert alpha.to_decimal(30).startswith('0.38196601125010515179541316563')


def test_rational_values_mix_fields():
    assert QuadraticReal(2, 0, 5) == 2
    assert QuadraticReal(1) + golden_alpha() == QuadraticReal(Fraction(5, 2), Fraction(-1, 2), 5)
    assert hash(QuadraticReal(3, 0, 5)) == hash(QuadraticReal(3))


def test_irrational_values_do_not_mix():
    with pytest.raises(ValueError):
        QuadraticReal(0, 1, 5) + QuadraticReal(0, 1, 7)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        golden_alpha() / QuadraticReal(0, 0, 5)


def test_reciprocal():
    alpha = golden_alpha()
    assert 1 / alpha * alpha == 1


def test_field_parsing():
    field = QuadraticField(5)
    assert field.parse({'p': '3/2', 'q': '-1/2'}) == golden_alpha()
    assert field.parse('1/3') == Fraction(1, 3)
    with pytest.raises(InputError):
        field.parse({'p': 'x'})
    with pytest.raises(InputError):
        QuadraticField(8)


def test_to_dict_is_exact():
    data = golden_alpha().to_dict()
    assert data['p'] == '3/2' and data['q'] == '-1/2' and data['d'] == 5
    assert data['decimal'].startswith('0.381966')
