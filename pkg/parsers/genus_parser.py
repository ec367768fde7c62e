"""
parse genus specializations: preset names and inline assignments
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Mapping, Optional

from core.exactnum import ExactArithmeticError, parse_rational
from core.lazard import PRESETS, GenusSpec
from parsers.expression_parser import ParseError

logger = logging.getLogger(__name__)

ASSIGNMENT_PATTERN = re.compile(r'^p(\d+)=(.+)$')


def _rational(text, token: str) -> Fraction:
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    try:
        return parse_rational(str(text).strip())
    except ExactArithmeticError:
        raise ParseError("malformed rational", token)


class GenusParser:
    """
    resolves 'multiplicative', 'signature', 'p1=1,p2=1/2,default=0'

    presets from config are expanded up to `max_index`, rules:
      values: {i: q}         explicit p_i
      even / odd: q          all even / odd generators
      affine: [a, b]         p_i -> a*i + b
      default: q             anything left
    """

    def __init__(self, genera: Optional[Mapping] = None, max_index: int = 16):
        self.max_index = max_index
        self.presets: Dict[str, GenusSpec] = dict(PRESETS)
        for name, rules in (genera or {}).items():
            try:
                self.presets[name] = self._from_rules(name, rules or {})
            except ParseError as e:
                logger.warning(f"skipping genus preset '{name}': {e}")

    def _from_rules(self, name: str, rules: Mapping) -> GenusSpec:
        if not isinstance(rules, Mapping):
            raise ParseError("genus rules must be a mapping", name)
        try:
            return self._expand_rules(name, rules)
        except ParseError:
            raise
        except (TypeError, ValueError, AttributeError) as e:
            raise ParseError(f"malformed genus rules ({e})", name)

    def _expand_rules(self, name: str, rules: Mapping) -> GenusSpec:
        assignment: Dict[int, Fraction] = {}
        for i in range(1, self.max_index + 1):
            if 'affine' in rules:
                a, b = rules['affine']
                assignment[i] = _rational(a, name) * i + _rational(b, name)
            parity = 'even' if i % 2 == 0 else 'odd'
            if parity in rules:
                assignment[i] = _rational(rules[parity], name)
        for index, value in (rules.get('values') or {}).items():
            assignment[int(index)] = _rational(value, f"p{index}")
        default = _rational(rules['default'], name) if 'default' in rules else None
        return GenusSpec(name, assignment, default)

    def parse(self, text: str) -> GenusSpec:
        text = (text or '').strip()
        if not text:
            raise ParseError("empty genus spec")
        if text in self.presets:
            return self.presets[text]
        if '=' not in text:
            raise ParseError("unknown genus preset", text)

        assignment: Dict[int, Fraction] = {}
        default = None
        for token in text.split(','):
            token = token.strip()
            if token.startswith('default='):
                default = _rational(token[len('default='):], token)
                continue
            match = ASSIGNMENT_PATTERN.match(token)
            if not match or int(match.group(1)) < 1:
                raise ParseError("expected an assignment like p1=1/2", token)
            assignment[int(match.group(1))] = _rational(match.group(2), token)
        return GenusSpec(text, assignment, default)
