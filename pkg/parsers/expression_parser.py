"""
parse lazard elements and truncated series from their printed form
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from core.exactnum import ExactArithmeticError, parse_rational
from core.lazard import LazardElement
from core.series import DEFAULT_VARIABLES, SeriesError, TruncSeries


class ParseError(ValueError):
    """malformed input text, carrying the offending token"""

    def __init__(self, message: str, token: str = ''):
        self.token = token
        super().__init__(f"{message}: {token!r}" if token else message)


GENERATOR_PATTERN = re.compile(r'^p(\d+)(?:\^(\d+))?$')
VARIABLE_PATTERN = re.compile(r'^([a-z])(?:\^(\d+))?$')
PARENTHESIZED_PATTERN = re.compile(r'^\(([+-]?\d+(?:/\d+)?)\)$')

Term = Tuple[Fraction, Tuple[int, ...], Dict[str, int]]


def _split_terms(text: str) -> List[str]:
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    normalized = text.replace(' - ', ' + -')
    return [t.strip() for t in normalized.split(' + ')]


def _parse_term(term: str) -> Term:
    """one summand -> (rational, generator indices, variable exponents)"""
    if not term:
        raise ParseError("empty term")
    sign = 1
    body = term
    # '-1/2' is a bare rational, '-p1*u' and '-3*u' carry a sign
    if body.startswith('-') and not PARENTHESIZED_PATTERN.match(body):
        try:
            return parse_rational(body), (), {}
        except ExactArithmeticError:
            sign, body = -1, body[1:]

    coeff = Fraction(sign)
    generators: List[int] = []
    variables: Dict[str, int] = {}
    for factor in body.split('*'):
        factor = factor.strip()
        if not factor:
            raise ParseError("empty factor in", term)

        parenthesized = PARENTHESIZED_PATTERN.match(factor)
        if parenthesized:
            coeff *= parse_rational(parenthesized.group(1))
            continue
        try:
            coeff *= parse_rational(factor)
            continue
        except ExactArithmeticError:
            pass

        generator = GENERATOR_PATTERN.match(factor)
        if generator:
            index = int(generator.group(1))
            if index < 1:
                raise ParseError("generator index must be positive", factor)
            generators.extend([index] * int(generator.group(2) or 1))
            continue

        variable = VARIABLE_PATTERN.match(factor)
        if variable and variable.group(1) != 'p':
            name = variable.group(1)
            variables[name] = variables.get(name, 0) + int(variable.group(2) or 1)
            continue

        raise ParseError("unrecognized factor", factor)
    return coeff, tuple(sorted(generators)), variables


class LazardParser:
    """'p1^2 + (-1/2)*p2' -> LazardElement"""

    @classmethod
    def parse(cls, text: str) -> LazardElement:
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for term in _split_terms(text):
            coeff, generators, variables = _parse_term(term)
            if variables:
                raise ParseError("series variable in a lazard element", term)
            terms[generators] = terms.get(generators, Fraction(0)) + coeff
        return LazardElement(terms)


class SeriesParser:
    """'u + (-1/2)*p1*u^2' -> TruncSeries"""

    @classmethod
    def parse(cls, text: str, order: int, variables: Optional[Sequence[str]] = None) -> TruncSeries:
        parsed = [(term, _parse_term(term)) for term in _split_terms(text)]

        used = {name for _, (_, _, exps) in parsed for name in exps}
        if variables is None:
            unknown = sorted(used - set(DEFAULT_VARIABLES))
            if unknown:
                raise ParseError("unknown series variable", unknown[0])
            variables = tuple(v for v in DEFAULT_VARIABLES if v in used) or ('u',)
        variables = tuple(variables)
        stray = sorted(used - set(variables))
        if stray:
            raise ParseError("variable not in the series variables", stray[0])

        lazard = any(generators for _, (_, generators, _) in parsed)
        terms: Dict[Tuple[int, ...], object] = {}
        for term, (coeff, generators, exps) in parsed:
            exponent = tuple(exps.get(v, 0) for v in variables)
            value = LazardElement({generators: coeff}) if lazard else coeff
            terms[exponent] = terms[exponent] + value if exponent in terms else value
        try:
            return TruncSeries(variables, order, terms)
        except SeriesError as e:
            raise ParseError(str(e), text)
