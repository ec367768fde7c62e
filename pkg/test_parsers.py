"""
test text parsing for expressions, varieties and genus specs
"""

from fractions import Fraction

import pytest

from core.chern import LineBundleSpec, Partition, ProjProduct
from core.lazard import LazardElement, universal_fgl, universal_log
from parsers.expression_parser import LazardParser, ParseError, SeriesParser
from parsers.genus_parser import GenusParser
from parsers.variety_parser import VarietyParser

p = LazardElement.generator


def test_lazard_parsing():
    assert LazardParser.parse('p1^2 + (-1/2)*p2') == p(1) ** 2 - p(2) * Fraction(1, 2)
    assert LazardParser.parse('-p1') == -p(1)
    assert LazardParser.parse('3 + -2*p1*p3') == 3 - p(1) * p(3) * 2
    assert LazardParser.parse('p1 - p1') == 0


def test_printed_elements_parse_back():
    fgl = universal_fgl(5)
    for coeff in fgl.coefficients().values():
        assert LazardParser.parse(str(coeff)) == coeff


def test_series_parsing():
    log = universal_log(5)
    assert SeriesParser.parse(str(log), 5) == log
    law = universal_fgl(4).series
    assert SeriesParser.parse(str(law), 4, ('u', 'v')) == law
    plain = SeriesParser.parse('1 + u + (1/2)*u^2', 4)
    assert plain.coefficient(2) == Fraction(1, 2)


@pytest.mark.parametrize('text, token', [
    ('p1 + q2', 'q2'),
    ('p1 + 2*', ''),
    ('p0', 'p0'),
])
def test_lazard_parse_errors_name_the_token(text, token):
    with pytest.raises(ParseError) as excinfo:
        LazardParser.parse(text)
    if token:
        assert excinfo.value.token == token


def test_series_variable_mismatch():
    with pytest.raises(ParseError):
        SeriesParser.parse('u + v', 4, ('u',))
    with pytest.raises(ParseError):
        LazardParser.parse('p1*u')


def test_variety_and_bundles():
    x = VarietyParser.parse_variety('P2xP1xP1')
    assert x == ProjProduct((2, 1, 1))
    assert VarietyParser.parse_bundle('O(2,-1,0)', x) == LineBundleSpec(x, (2, -1, 0))
    assert VarietyParser.parse_bundle('O(1, 1, 1)', x).multidegree == (1, 1, 1)


@pytest.mark.parametrize('text, token', [
    ('P2xQ1', 'Q1'),
    ('P0', 'P0'),
    ('P2x', ''),
])
def test_bad_varieties(text, token):
    with pytest.raises(ParseError) as excinfo:
        VarietyParser.parse_variety(text)
    assert excinfo.value.token == token


def test_bad_bundles():
    x = VarietyParser.parse_variety('P1xP1')
    with pytest.raises(ParseError):
        VarietyParser.parse_bundle('O(1)', x)
    with pytest.raises(ParseError):
        VarietyParser.parse_bundle('L(1,1)', x)


def test_partitions():
    assert VarietyParser.parse_partition('2+1+1') == Partition((2, 1, 1))
    assert VarietyParser.parse_partition('0') == Partition()
    with pytest.raises(ParseError):
        VarietyParser.parse_partition('1+2')
    with pytest.raises(ParseError):
        VarietyParser.parse_partition('2+x')


def test_genus_presets_and_inline_specs():
    parser = GenusParser({
        'signature': {'even': 1, 'odd': 0},
        'euler': {'affine': [1, 1]},
        'custom': {'values': {1: '1/2'}, 'default': 0},
    }, max_index=8)
    assert parser.parse('multiplicative').value(5) == 1
    assert parser.parse('signature').value(4) == 1
    assert parser.parse('signature').value(3) == 0
    assert parser.parse('euler').value(3) == 4
    assert parser.parse('custom').value(1) == Fraction(1, 2)
    assert parser.parse('custom').value(7) == 0

    inline = parser.parse('p1=1,p2=1/2')
    assert inline.value(2) == Fraction(1, 2)
    assert parser.parse('p1=3,default=1').value(9) == 1


@pytest.mark.parametrize('text', ['unknown', 'p1=x', 'q1=1', 'p0=1', ''])
def test_bad_genus_specs(text):
    with pytest.raises(ParseError):
        GenusParser().parse(text)
