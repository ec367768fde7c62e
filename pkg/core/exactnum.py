"""
exact rational arithmetic - the coefficient field for everything else
"""

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

# fractions.Fraction already keeps denominator > 0, gcd = 1 and zero as 0/1
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

RationalLike = Union[int, Fraction]

RATIONAL_PATTERN = re.compile(r'([+-]?\d+)(?:/(\d+))?')


class ExactArithmeticError(ArithmeticError):
    """raised for division by zero and malformed rationals"""


def rational(numerator: RationalLike, denominator: RationalLike = 1) -> Rational:
    """build a reduced rational, sign normalized into the numerator"""
    if denominator == 0:
        raise ExactArithmeticError(f"zero denominator in {numerator}/{denominator}")
    return Fraction(numerator) / Fraction(denominator)


def as_rational(value) -> Rational:
    """coerce int / Fraction / 'p/q' text into a Rational"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ExactArithmeticError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ExactArithmeticError(f"not a rational: {value!r}")


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Rational:
    """add / sub / mul / div on two rationals"""
    a, b = as_rational(a), as_rational(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        if b == 0:
            raise ExactArithmeticError(f"division by zero: {format_rational(a)}/0")
        return a / b
    raise ExactArithmeticError(f"unknown operation: {op}")


def format_rational(q: RationalLike) -> str:
    """serialize as 'p/q', dropping '/1'"""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Rational:
    """parse the whitespace-free 'p/q' form"""
    match = RATIONAL_PATTERN.fullmatch(text)
    if not match:
        raise ExactArithmeticError(f"malformed rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    return rational(numerator, denominator)


def format_term(q: RationalLike, factors: Sequence[str]) -> str:
    """one summand: '-p1', '3*u^2', '(1/2)*p1*u', '-1/2'"""
    q = Fraction(q)
    body = '*'.join(factors)
    if not body:
        return format_rational(q)
    if q == 1:
        return body
    if q == -1:
        return f"-{body}"
    if q.denominator == 1:
        return f"{q.numerator}*{body}"
    return f"({format_rational(q)})*{body}"


def format_terms(pieces: Iterable[Tuple[RationalLike, Sequence[str]]]) -> str:
    """join summands with ' + ', '0' for the empty sum"""
    rendered = [format_term(q, factors) for q, factors in pieces if q]
    return ' + '.join(rendered) if rendered else '0'
