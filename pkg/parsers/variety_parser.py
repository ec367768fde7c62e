"""
parse varieties, line bundles and partitions
"""

import re
from typing import List, Tuple

from core.chern import ChernError, LineBundleSpec, Partition, ProjProduct
from parsers.expression_parser import ParseError


class VarietyParser:
    """'P2xP1', 'O(2,-1)', '2+1+1'"""

    FACTOR_PATTERN = re.compile(r'^P(\d+)$')
    BUNDLE_PATTERN = re.compile(r'^O\((-?\d+(?:,-?\d+)*)\)$')

    @classmethod
    def parse_variety(cls, text: str) -> ProjProduct:
        if not text or not text.strip():
            raise ParseError("empty variety")
        factors: List[int] = []
        for token in text.strip().split('x'):
            match = cls.FACTOR_PATTERN.match(token)
            if not match:
                raise ParseError("expected a factor like P2", token)
            r = int(match.group(1))
            if r < 1:
                raise ParseError("projective space dimension must be positive", token)
            factors.append(r)
        return ProjProduct(tuple(factors))

    @classmethod
    def parse_bundle(cls, text: str, base: ProjProduct) -> LineBundleSpec:
        compact = text.replace(' ', '')
        match = cls.BUNDLE_PATTERN.match(compact)
        if not match:
            raise ParseError("expected a line bundle like O(2,1)", text)
        degrees = tuple(int(a) for a in match.group(1).split(','))
        try:
            return LineBundleSpec(base, degrees)
        except ChernError as e:
            raise ParseError(str(e), text)

    @classmethod
    def parse_bundles(cls, texts: List[str], base: ProjProduct) -> Tuple[LineBundleSpec, ...]:
        return tuple(cls.parse_bundle(t, base) for t in texts)

    @classmethod
    def parse_partition(cls, text: str) -> Partition:
        text = text.strip()
        if text == '0':
            return Partition()
        parts = []
        for token in text.split('+'):
            if not token.isdigit() or int(token) < 1:
                raise ParseError("partition parts must be positive integers", token)
            parts.append(int(token))
        parts_sorted = sorted(parts, reverse=True)
        if parts != parts_sorted:
            raise ParseError("partition parts must be weakly decreasing", text)
        return Partition(parts)
