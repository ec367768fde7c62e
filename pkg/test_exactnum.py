"""
test exact rational arithmetic
"""

from fractions import Fraction

import pytest

from core.exactnum import (
    ExactArithmeticError, as_rational, format_rational, format_term, format_terms,
    parse_rational, rat_arith, rational,
)


def test_rational_normalizes_sign_and_gcd():
    q = rational(6, -4)
    assert q == Fraction(-3, 2)
    assert q.denominator == 2
    assert rational(0, 5) == 0


def test_rational_rejects_zero_denominator():
    with pytest.raises(ExactArithmeticError):
        rational(1, 0)


@pytest.mark.parametrize('a, b, op, expected', [
    (Fraction(1, 2), Fraction(1, 3), 'add', Fraction(5, 6)),
    (Fraction(1, 2), Fraction(1, 3), 'sub', Fraction(1, 6)),
    (Fraction(2, 3), Fraction(3, 4), 'mul', Fraction(1, 2)),
    (Fraction(2, 3), Fraction(4, 3), 'div', Fraction(1, 2)),
    (-1, 2, 'div', Fraction(-1, 2)),
])
def test_rat_arith(a, b, op, expected):
    assert rat_arith(a, b, op) == expected


def test_division_by_zero_is_an_error():
    with pytest.raises(ExactArithmeticError):
        rat_arith(Fraction(1, 2), 0, 'div')
    with pytest.raises(ExactArithmeticError):
        rat_arith(1, 2, 'pow')


def test_as_rational_coercions():
    assert as_rational(3) == Fraction(3)
    assert as_rational('-7/14') == Fraction(-1, 2)
    with pytest.raises(ExactArithmeticError):
        as_rational(True)
    with pytest.raises(ExactArithmeticError):
        as_rational(0.5)


def test_format_and_parse():
    assert format_rational(Fraction(-3, 6)) == '-1/2'
    assert format_rational(4) == '4'
    assert parse_rational('10/4') == Fraction(5, 2)
    assert parse_rational('-3') == -3
    for bad in ('1/0', '1/-2', ' 1/2', '1/2\n', '1/2 ', '3\n', '1.5', ''):
        with pytest.raises(ExactArithmeticError):
            parse_rational(bad)


def test_term_formatting():
    assert format_term(1, ['p1']) == 'p1'
    assert format_term(-1, ['p1', 'u']) == '-p1*u'
    assert format_term(3, ['u^2']) == '3*u^2'
    assert format_term(Fraction(-1, 2), ['p1', 'u^2']) == '(-1/2)*p1*u^2'
    assert format_term(Fraction(-1, 2), []) == '-1/2'
    assert format_terms([]) == '0'
    assert format_terms([(1, ['u']), (0, ['v']), (Fraction(1, 3), ['v'])]) == 'u + (1/3)*v'
