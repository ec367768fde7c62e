"""
truncated sparse power series in up to three variables

coefficients are anything that supports +, -, * and truth testing:
plain Rationals or LazardElements. every series carries its truncation
order and binary operations keep the smaller one.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.exactnum import ONE, ZERO, format_terms

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

MAX_VARIABLES = 3
DEFAULT_VARIABLES = ('u', 'v', 'w')


class SeriesError(ValueError):
    """raised when a series operation is undefined at the formal level"""


def _scalar_inverse(value):
    """inverse of a unit coefficient (nonzero rational or constant lazard element)"""
    if isinstance(value, (int, Fraction)):
        if value == 0:
            raise SeriesError("coefficient 0 is not a unit")
        return ONE / value
    try:
        scalar = value.as_scalar()
    except (AttributeError, ValueError):
        raise SeriesError(f"coefficient {value} is not a unit")
    if scalar == 0:
        raise SeriesError("coefficient 0 is not a unit")
    return ONE / scalar


class TruncSeries:
    """power series known exactly below total degree `order`"""

    __slots__ = ('variables', 'order', '_terms')

    def __init__(self, variables: Sequence[str], order: int,
                 terms: Optional[Mapping[Exponent, object]] = None):
        variables = tuple(variables)
        if not 1 <= len(variables) <= MAX_VARIABLES:
            raise SeriesError(f"need 1 to {MAX_VARIABLES} variables, got {len(variables)}")
        if len(set(variables)) != len(variables):
            raise SeriesError(f"duplicate variable in {variables}")
        if isinstance(order, bool) or not isinstance(order, int) or order < 1:
            raise SeriesError(f"truncation order must be a positive integer, got {order!r}")

        clean = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != len(variables) or any(e < 0 for e in exponent):
                raise SeriesError(f"bad exponent {exponent} for variables {variables}")
            if sum(exponent) >= order:
                continue
            if isinstance(coeff, int):
                coeff = Fraction(coeff)
            if coeff:
                clean[exponent] = coeff

        self.variables = variables
        self.order = order
        self._terms = clean

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], order: int, terms: Dict[Exponent, object]) -> 'TruncSeries':
        """build from already-clean terms (no zero coefficients, degrees below order)"""
        series = cls.__new__(cls)
        series.variables = variables
        series.order = order
        series._terms = terms
        return series

    # constructors

    @classmethod
    def zero(cls, variables: Sequence[str], order: int) -> 'TruncSeries':
        return cls(variables, order)

    @classmethod
    def constant(cls, value, variables: Sequence[str], order: int) -> 'TruncSeries':
        return cls(variables, order, {(0,) * len(tuple(variables)): value})

    @classmethod
    def one(cls, variables: Sequence[str], order: int) -> 'TruncSeries':
        return cls.constant(ONE, variables, order)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str], order: int) -> 'TruncSeries':
        variables = tuple(variables)
        if name not in variables:
            raise SeriesError(f"unknown variable {name!r}, expected one of {variables}")
        exponent = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, order, {exponent: ONE})

    @classmethod
    def from_coefficients(cls, coefficients: Sequence, order: int, variable: str = 'u') -> 'TruncSeries':
        """univariate series sum_k coefficients[k] * variable^k"""
        return cls((variable,), order, {(k,): c for k, c in enumerate(coefficients)})

    # inspection

    @property
    def terms(self) -> Dict[Exponent, object]:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_univariate(self) -> bool:
        return len(self.variables) == 1

    def coefficient(self, *exponent: int):
        """coefficient of the given monomial, ZERO when absent"""
        if len(exponent) == 1 and isinstance(exponent[0], tuple):
            exponent = exponent[0]
        if len(exponent) != self.nvars:
            raise SeriesError(f"exponent {exponent} does not match variables {self.variables}")
        return self._terms.get(tuple(exponent), ZERO)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, ZERO)

    def max_degree(self) -> int:
        """largest stored total degree, -1 for the zero series"""
        return max((sum(e) for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterable[Tuple[Exponent, object]]:
        return self._terms.items()

    # structural operations

    def truncate(self, order: int) -> 'TruncSeries':
        return TruncSeries(self.variables, min(order, self.order), self._terms)

    def homogeneous_part(self, degree: int) -> 'TruncSeries':
        return TruncSeries._raw(self.variables, self.order,
                                {e: c for e, c in self._terms.items() if sum(e) == degree})

    def map_coefficients(self, func: Callable) -> 'TruncSeries':
        return TruncSeries(self.variables, self.order, {e: func(c) for e, c in self._terms.items()})

    def embed(self, variables: Sequence[str]) -> 'TruncSeries':
        """view this series inside a larger variable list (matched by name)"""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise SeriesError(f"cannot embed {self.variables} into {variables}: missing {missing}")
        positions = [variables.index(v) for v in self.variables]
        terms = {}
        for exponent, coeff in self._terms.items():
            target = [0] * len(variables)
            for position, e in zip(positions, exponent):
                target[position] = e
            terms[tuple(target)] = coeff
        return TruncSeries(variables, self.order, terms)

    def divide_by_variable(self) -> 'TruncSeries':
        """s(u)/u for a univariate series with zero constant term"""
        if not self.is_univariate:
            raise SeriesError("division by the variable needs a univariate series")
        if self.constant_term():
            raise SeriesError("series has a nonzero constant term")
        return TruncSeries(self.variables, self.order - 1 if self.order > 1 else 1,
                           {(e[0] - 1,): c for e, c in self._terms.items()})

    # operators

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            return ts_add(self, other)
        return ts_add(self, TruncSeries.constant(other, self.variables, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.variables, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return ts_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int):
        return ts_pow(self, exponent)

    def scale(self, factor) -> 'TruncSeries':
        if isinstance(factor, int):
            factor = Fraction(factor)
        terms = {}
        for exponent, coeff in self._terms.items():
            product = coeff * factor
            if product:
                terms[exponent] = product
        return TruncSeries._raw(self.variables, self.order, terms)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.variables == other.variables and self.order == other.order
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.variables, self.order, frozenset(self._terms.items())))

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncSeries({self.variables}, order={self.order}, '{format_series(self)}')"


def _check_compatible(a: TruncSeries, b: TruncSeries):
    if a.variables != b.variables:
        raise SeriesError(f"variable mismatch: {a.variables} vs {b.variables}")


def ts_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """coefficient-wise sum at the smaller order"""
    _check_compatible(a, b)
    order = min(a.order, b.order)
    terms = {e: c for e, c in a._terms.items() if sum(e) < order}
    for exponent, coeff in b._terms.items():
        if sum(exponent) >= order:
            continue
        if exponent in terms:
            total = terms[exponent] + coeff
            if total:
                terms[exponent] = total
            else:
                del terms[exponent]
        else:
            terms[exponent] = coeff
    return TruncSeries._raw(a.variables, order, terms)


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """truncated cauchy product"""
    _check_compatible(a, b)
    order = min(a.order, b.order)
    right = [(e, sum(e), c) for e, c in b._terms.items() if sum(e) < order]
    terms = {}
    for left_exp, left_coeff in a._terms.items():
        left_deg = sum(left_exp)
        if left_deg >= order:
            continue
        for right_exp, right_deg, right_coeff in right:
            if left_deg + right_deg >= order:
                continue
            key = tuple(x + y for x, y in zip(left_exp, right_exp))
            product = left_coeff * right_coeff
            if key in terms:
                terms[key] = terms[key] + product
            else:
                terms[key] = product
    return TruncSeries._raw(a.variables, order, {e: c for e, c in terms.items() if c})


def ts_pow(s: TruncSeries, exponent: int) -> TruncSeries:
    """s^n; negative n goes through the multiplicative inverse"""
    if exponent < 0:
        return ts_pow(ts_inv(s), -exponent)
    result = TruncSeries.one(s.variables, s.order)
    base = s
    while exponent:
        if exponent & 1:
            result = ts_mul(result, base)
        exponent >>= 1
        if exponent:
            base = ts_mul(base, base)
    return result


def ts_compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner) for univariate outer and inner without constant term"""
    if not outer.is_univariate:
        raise SeriesError("outer series of a composition must be univariate")
    if inner.constant_term():
        raise SeriesError("inner series has a nonzero constant term")
    order = min(outer.order, inner.order)
    inner = inner.truncate(order)

    # horner from the top degree down
    result = TruncSeries.zero(inner.variables, order)
    for degree in range(outer.max_degree(), -1, -1):
        result = ts_mul(result, inner)
        coeff = outer.coefficient(degree)
        if coeff:
            result = result + coeff
    return result


def ts_substitute(outer: TruncSeries, images: Sequence[TruncSeries]) -> TruncSeries:
    """replace each variable of outer by the matching image series"""
    images = list(images)
    if len(images) != outer.nvars:
        raise SeriesError(f"need {outer.nvars} images, got {len(images)}")
    variables = images[0].variables
    for image in images[1:]:
        _check_compatible(images[0], image)
    order = min([outer.order] + [image.order for image in images])

    for index, image in enumerate(images):
        if image.constant_term() and any(e[index] for e in outer._terms):
            raise SeriesError(f"image for {outer.variables[index]} has a nonzero constant term")

    images = [image.truncate(order) for image in images]
    powers: List[List[TruncSeries]] = [[TruncSeries.one(variables, order)] for _ in images]

    def power(index: int, k: int) -> TruncSeries:
        cache = powers[index]
        while len(cache) <= k:
            cache.append(ts_mul(cache[-1], images[index]))
        return cache[k]

    result = TruncSeries.zero(variables, order)
    for exponent, coeff in sorted(outer._terms.items(), key=lambda item: _graded_key(item[0])):
        if sum(exponent) >= order:
            continue
        term = None
        for index, k in enumerate(exponent):
            if k == 0:
                continue
            term = power(index, k) if term is None else ts_mul(term, power(index, k))
        if term is None:
            term = TruncSeries.one(variables, order)
        result = ts_add(result, term.scale(coeff))
    return result


def ts_revert(s: TruncSeries) -> TruncSeries:
    """compositional inverse by a degree-by-degree triangular solve"""
    if not s.is_univariate:
        raise SeriesError("reversion needs a univariate series")
    if s.constant_term():
        raise SeriesError("reversion needs a zero constant term")
    linear = s.coefficient(1)
    inverse_linear = _scalar_inverse(linear)

    g = TruncSeries(s.variables, s.order, {(1,): inverse_linear})
    for degree in range(2, s.order):
        composed = ts_compose(s.truncate(degree + 1), g.truncate(degree + 1))
        defect = composed.coefficient(degree)
        if defect:
            correction = TruncSeries(s.variables, s.order, {(degree,): -(defect * inverse_linear)})
            g = ts_add(g, correction)
    logger.debug(f"reverted series of order {s.order}")
    return g


def ts_inv(s: TruncSeries) -> TruncSeries:
    """multiplicative inverse of a series with unit constant term"""
    inverse_constant = _scalar_inverse(s.constant_term())
    one = TruncSeries.one(s.variables, s.order)
    x = s.scale(inverse_constant) - one

    # 1/(1+x) = 1 - x(1 - x(1 - ...)), x is nilpotent below the order
    result = one
    for _ in range(s.order - 1):
        result = one - ts_mul(x, result)
    return result.scale(inverse_constant)


def ts_exp(s: TruncSeries) -> TruncSeries:
    """exp(s) for s without constant term"""
    if s.constant_term():
        raise SeriesError("exp needs a zero constant term")
    one = TruncSeries.one(s.variables, s.order)
    result = one
    for k in range(s.order - 1, 0, -1):
        result = one + ts_mul(s, result).scale(Fraction(1, k))
    return result


def ts_log(s: TruncSeries) -> TruncSeries:
    """log(s) for s with constant term 1"""
    if s.constant_term() != 1:
        raise SeriesError("log needs constant term 1")
    x = s - TruncSeries.one(s.variables, s.order)
    log1p = TruncSeries.from_coefficients(
        [ZERO] + [Fraction((-1) ** (k + 1), k) for k in range(1, s.order)], s.order)
    return ts_compose(log1p, x)


# printing


def _graded_key(exponent: Exponent):
    return (sum(exponent), tuple(-e for e in exponent))


def _variable_factors(variables: Sequence[str], exponent: Exponent) -> List[str]:
    factors = []
    for name, e in zip(variables, exponent):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return factors


def _coefficient_terms(coeff) -> List[Tuple[List[str], Fraction]]:
    if hasattr(coeff, 'formatted_terms'):
        return [([body] if body else [], q) for body, q in coeff.formatted_terms()]
    return [([], Fraction(coeff))]


def format_series(s: TruncSeries) -> str:
    """graded-lex text form, e.g. 'u + (-1/2)*p1*u^2'"""
    pieces = []
    for exponent in sorted(s._terms, key=_graded_key):
        variable_part = _variable_factors(s.variables, exponent)
        for coeff_part, q in _coefficient_terms(s._terms[exponent]):
            pieces.append((q, coeff_part + variable_part))
    return format_terms(pieces)
