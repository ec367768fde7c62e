"""
rational lazard ring Q[p1, p2, ...] and the universal formal group law

p_i stands for the class of the i-dimensional projective space (degree i).
the universal logarithm is h(u) = sum_i p_i/(i+1) u^(i+1), the universal law
is F(u, v) = h^-1(h(u) + h(v)) and the g-series satisfies u g(u) = h^-1(u).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from core.exactnum import ONE, ZERO, format_terms
from core.models import FGLAxiomReport, IdentityReport
from core.series import (
    TruncSeries, ts_add, ts_compose, ts_inv, ts_mul, ts_pow, ts_revert, ts_substitute,
)
from utils.memo import memoized

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

UV = ('u', 'v')
UVW = ('u', 'v', 'w')


class LazardError(ValueError):
    """raised for malformed lazard elements and non-scalar coercions"""


class UnassignedGeneratorError(LazardError):
    """a genus specialization met a generator it has no value for"""

    def __init__(self, index: int, spec_name: str = ''):
        self.index = index
        self.spec_name = spec_name
        label = f" '{spec_name}'" if spec_name else ''
        super().__init__(f"genus spec{label} assigns no value to p{index}")


def monomial_degree(monomial: Monomial) -> int:
    return sum(monomial)


def format_monomial(monomial: Monomial) -> str:
    """(1, 1, 3) -> 'p1^2*p3', () -> ''"""
    factors = []
    for index in sorted(set(monomial)):
        power = monomial.count(index)
        factors.append(f"p{index}" if power == 1 else f"p{index}^{power}")
    return '*'.join(factors)


def _monomial_key(monomial: Monomial):
    return (monomial_degree(monomial), monomial)


class LazardElement:
    """sparse polynomial in the generators p1, p2, ... with rational coefficients"""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Iterable[int], object]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(sorted(monomial))
            if any((not isinstance(i, int)) or i < 1 for i in monomial):
                raise LazardError(f"generator indices must be positive integers: {monomial}")
            if isinstance(coeff, bool) or not isinstance(coeff, (int, Fraction)):
                raise LazardError(f"coefficient must be rational: {coeff!r}")
            clean[monomial] = clean.get(monomial, ZERO) + Fraction(coeff)
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> 'LazardElement':
        element = cls.__new__(cls)
        element._terms = terms
        return element

    @classmethod
    def generator(cls, index: int) -> 'LazardElement':
        """p_index; p_0 is the unit"""
        if index == 0:
            return cls.constant(ONE)
        return cls({(index,): ONE})

    @classmethod
    def constant(cls, value) -> 'LazardElement':
        return cls({(): value})

    @classmethod
    def zero(cls) -> 'LazardElement':
        return cls._raw({})

    @classmethod
    def one(cls) -> 'LazardElement':
        return cls.constant(ONE)

    # inspection

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def coefficient(self, monomial: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(sorted(monomial)), ZERO)

    def degrees(self) -> List[int]:
        return sorted({monomial_degree(m) for m in self._terms})

    def degree(self) -> int:
        """top degree, -1 for zero"""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = self.degrees()
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees[0] == degree

    def homogeneous_part(self, degree: int) -> 'LazardElement':
        return LazardElement._raw({m: c for m, c in self._terms.items() if monomial_degree(m) == degree})

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def as_scalar(self) -> Fraction:
        if not self.is_constant():
            raise LazardError(f"{self} is not a constant")
        return self._terms.get((), ZERO)

    def evaluate(self, value_of: Callable[[int], Fraction]) -> Fraction:
        """ring morphism p_i -> value_of(i)"""
        total = ZERO
        for monomial, coeff in self._terms.items():
            product = coeff
            for index in monomial:
                product *= value_of(index)
            total += product
        return total

    # arithmetic

    @staticmethod
    def _coerce(other) -> Optional['LazardElement']:
        if isinstance(other, LazardElement):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LazardElement._raw({(): Fraction(other)} if other else {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = terms.get(monomial, ZERO) + coeff
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
        return LazardElement._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return LazardElement._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return LazardElement._raw({})
            return LazardElement._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, LazardElement):
            return NotImplemented
        terms: Dict[Monomial, Fraction] = {}
        for left, left_coeff in self._terms.items():
            for right, right_coeff in other._terms.items():
                key = tuple(sorted(left + right))
                terms[key] = terms.get(key, ZERO) + left_coeff * right_coeff
        return LazardElement._raw({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("lazard element divided by zero")
            return self * (ONE / other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise LazardError("negative powers are not defined in the lazard ring")
        result = LazardElement.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self.is_constant():
            return hash(self._terms.get((), ZERO))
        return hash(frozenset(self._terms.items()))

    # printing

    def formatted_terms(self) -> List[Tuple[str, Fraction]]:
        return [(format_monomial(m), self._terms[m]) for m in sorted(self._terms, key=_monomial_key)]

    def __str__(self):
        return format_terms((q, [body] if body else []) for body, q in self.formatted_terms())

    def __repr__(self):
        return f"LazardElement('{self}')"


def monomial_element(parts: Iterable[int], coeff=ONE) -> LazardElement:
    """p_{j1} ... p_{jm} for a partition (j1, ..., jm)"""
    return LazardElement({tuple(parts): coeff})


@dataclass(frozen=True)
class GenusSpec:
    """ring morphism Q[p1, p2, ...] -> Q given by values on the generators"""
    name: str
    assignment: Mapping[int, Fraction] = field(default_factory=dict)
    default: Optional[Fraction] = None

    def value(self, index: int) -> Fraction:
        if index == 0:
            return ONE
        if index in self.assignment:
            return Fraction(self.assignment[index])
        if self.default is not None:
            return Fraction(self.default)
        raise UnassignedGeneratorError(index, self.name)


ADDITIVE = GenusSpec('additive', {}, ZERO)
MULTIPLICATIVE = GenusSpec('multiplicative', {}, ONE)

PRESETS: Dict[str, GenusSpec] = {
    'additive': ADDITIVE,
    'multiplicative': MULTIPLICATIVE,
}


@dataclass(frozen=True)
class FormalGroupLaw:
    """F(u, v) = sum a[i,j] u^i v^j, truncated"""
    series: TruncSeries

    def __post_init__(self):
        if self.series.variables != UV:
            raise LazardError(f"a formal group law lives in {UV}, got {self.series.variables}")

    @property
    def order(self) -> int:
        return self.series.order

    def coefficient(self, i: int, j: int):
        return self.series.coefficient(i, j)

    def coefficients(self) -> Dict[Tuple[int, int], object]:
        """a[i,j] for i <= j and 1 <= i+j < order"""
        return {
            (i, j): self.coefficient(i, j)
            for total in range(1, self.order)
            for i in range(0, total // 2 + 1)
            for j in [total - i]
        }

    def __call__(self, x: TruncSeries, y: TruncSeries) -> TruncSeries:
        return ts_substitute(self.series, [x, y])

    def dump(self) -> List[str]:
        return [f"a[{i},{j}] = {coeff}" for (i, j), coeff in self.coefficients().items()]

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'coefficients': {f"{i},{j}": str(c) for (i, j), c in self.coefficients().items()},
        }


def _variables(names: Tuple[str, ...], order: int) -> List[TruncSeries]:
    return [TruncSeries.variable(name, names, order) for name in names]


# universal objects


@memoized(maxsize=32)
def universal_log(order: int) -> TruncSeries:
    """h(u) = u + sum_{i>=1} p_i/(i+1) u^(i+1)"""
    if order < 2:
        raise LazardError(f"the logarithm needs order >= 2, got {order}")
    terms = {(1,): LazardElement.one()}
    for i in range(1, order - 1):
        terms[(i + 1,)] = LazardElement.generator(i) * Fraction(1, i + 1)
    return TruncSeries(('u',), order, terms)


@memoized(maxsize=32)
def inverse_log(order: int) -> TruncSeries:
    """h^-1(u) = u g(u)"""
    return ts_revert(universal_log(order))


@memoized(maxsize=32)
def universal_fgl(order: int) -> FormalGroupLaw:
    """F(u, v) = h^-1(h(u) + h(v))"""
    if order < 2:
        raise LazardError(f"the formal group law needs order >= 2, got {order}")
    logger.debug(f"building universal formal group law at order {order}")
    log = universal_log(order)
    v = TruncSeries.variable('v', UV, order)
    summed = ts_add(log.embed(UV), ts_compose(log, v))
    return FormalGroupLaw(ts_compose(inverse_log(order), summed))


@memoized(maxsize=32)
def g_series(order: int) -> TruncSeries:
    """g(u) = h^-1(u)/u, constant term 1, coefficients t_i below u^order"""
    if order < 1:
        raise LazardError(f"the g-series needs order >= 1, got {order}")
    return inverse_log(order + 1).divide_by_variable()


@memoized(maxsize=32)
def inverse_g_series(order: int) -> TruncSeries:
    """g(u)^-1, the series behind the inverse todd class"""
    return ts_inv(g_series(order))


def chi(fgl: FormalGroupLaw) -> TruncSeries:
    """formal inverse: F(u, chi(u)) = 0, solved degree by degree"""
    order = fgl.order
    u = TruncSeries.variable('u', ('u',), order)
    inverse = -u
    for degree in range(2, order):
        value = ts_substitute(fgl.series.truncate(degree + 1),
                              [u.truncate(degree + 1), inverse.truncate(degree + 1)])
        defect = value.coefficient(degree)
        if defect:
            inverse = inverse - TruncSeries(('u',), order, {(degree,): defect})
    return inverse


# specialization


def specialize(x, spec: GenusSpec):
    """apply the ring morphism of a genus coefficient-wise"""
    if isinstance(x, LazardElement):
        return x.evaluate(spec.value)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, TruncSeries):
        return x.map_coefficients(lambda c: specialize(c, spec))
    if isinstance(x, FormalGroupLaw):
        return FormalGroupLaw(specialize(x.series, spec))
    raise LazardError(f"cannot specialize {type(x).__name__}")


# verification


def is_graded(fgl: FormalGroupLaw) -> bool:
    """a[i,j] homogeneous of degree i+j-1 and symmetric in (i, j)"""
    for (i, j), coeff in fgl.series.items():
        if coeff != fgl.coefficient(j, i):
            return False
        if isinstance(coeff, LazardElement) and not coeff.is_homogeneous(i + j - 1):
            return False
    return True


def verify_fgl_axioms(fgl: FormalGroupLaw) -> FGLAxiomReport:
    """check associativity, commutativity, unit and linearization exactly"""
    order = fgl.order
    u, v, w = _variables(UVW, order)
    u2, v2 = _variables(UV, order)
    failures: Dict[str, Tuple[str, str]] = {}

    left = fgl(u, fgl(v, w))
    right = fgl(fgl(u, v), w)
    associativity = left == right
    if not associativity:
        failures['associativity'] = (str(left), str(right))

    swapped = fgl(v2, u2)
    commutativity = swapped == fgl.series
    if not commutativity:
        failures['commutativity'] = (str(swapped), str(fgl.series))

    with_zero = fgl(TruncSeries.zero(UV, order), u2)
    unit = with_zero == u2
    if not unit:
        failures['unit'] = (str(with_zero), str(u2))

    linear_order = min(2, order)
    linear_part = fgl.series.truncate(linear_order)
    expected = (u2 + v2).truncate(linear_order)
    linearization = linear_part == expected
    if not linearization:
        failures['linearization'] = (str(linear_part), str(expected))

    return FGLAxiomReport(
        order=order,
        associativity=associativity,
        commutativity=commutativity,
        unit=unit,
        linearization=linearization,
        failures=failures,
    )


def verify_g_axiom(order: int, spec: Optional[GenusSpec] = None) -> IdentityReport:
    """F(u g(u), v g(v)) = (u+v) g(u+v)"""
    if order < 2:
        raise LazardError(f"the g axiom needs order >= 2, got {order}")
    fgl = universal_fgl(order)
    g = g_series(order)
    if spec is not None:
        fgl = specialize(fgl, spec)
        g = specialize(g, spec)

    u, v = _variables(UV, order)
    lhs = fgl(ts_mul(u, ts_compose(g, u)), ts_mul(v, ts_compose(g, v)))
    total = u + v
    rhs = ts_mul(total, ts_compose(g, total))
    name = 'g-axiom' if spec is None else f'g-axiom[{spec.name}]'
    return IdentityReport(name=name, passed=lhs == rhs, lhs=str(lhs), rhs=str(rhs),
                          detail=f"order={order}")


def verify_lagrange_inversion(r_max: int, order: Optional[int] = None) -> List[IdentityReport]:
    """[u^r] g(u)^-(r+1) = (r+1) [u^(r+1)] h(u) = p_r for r = 0..r_max"""
    order = max(order or 0, r_max + 1)
    inverse = inverse_g_series(order)
    log = universal_log(max(order, r_max + 2))
    reports = []
    for r in range(r_max + 1):
        lhs = ts_pow(inverse, r + 1).coefficient(r)
        rhs = log.coefficient(r + 1) * (r + 1)
        expected = LazardElement.generator(r)
        reports.append(IdentityReport(
            name=f'lagrange-inversion[r={r}]',
            passed=lhs == rhs and rhs == expected,
            lhs=str(lhs),
            rhs=str(rhs),
            detail=f"expected {expected}",
        ))
    return reports


def verify_log_additivity(order: int) -> List[IdentityReport]:
    """h(F(u,v)) = h(u) + h(v) and h^-1(u+v) = F(h^-1(u), h^-1(v))"""
    fgl = universal_fgl(order)
    log = universal_log(order)
    inverse = inverse_log(order)
    u, v = _variables(UV, order)

    lhs = ts_compose(log, fgl.series)
    rhs = log.embed(UV) + ts_compose(log, v)
    additivity = IdentityReport('log-additivity', lhs == rhs, str(lhs), str(rhs), f"order={order}")

    lhs = ts_compose(inverse, u + v)
    rhs = fgl(ts_compose(inverse, u), ts_compose(inverse, v))
    exponential = IdentityReport('inverse-log-homomorphism', lhs == rhs, str(lhs), str(rhs),
                                 f"order={order}")
    return [additivity, exponential]


def verify_chi(fgl: FormalGroupLaw) -> List[IdentityReport]:
    """F(u, chi(u)) = 0 and chi is a homomorphism for the law"""
    order = fgl.order
    inverse = chi(fgl)
    u = TruncSeries.variable('u', ('u',), order)
    cancel = ts_substitute(fgl.series, [u, inverse])
    zero = TruncSeries.zero(('u',), order)
    reports = [IdentityReport('chi-cancellation', cancel == zero, str(cancel), str(zero),
                              f"order={order}")]

    u2, v2 = _variables(UV, order)
    lhs = fgl(ts_compose(inverse, u2), ts_compose(inverse, v2))
    rhs = ts_compose(inverse, fgl.series)
    reports.append(IdentityReport('chi-homomorphism', lhs == rhs, str(lhs), str(rhs),
                                  f"order={order}"))
    return reports


def verify_nontrivial_quotient(order: int) -> IdentityReport:
    """a[1,1] -> -1, other a[i,j] -> 0, t_i -> (-1)^i/(i+1)! is the multiplicative specialization"""
    fgl = specialize(universal_fgl(order), MULTIPLICATIVE)
    u, v = _variables(UV, order)
    expected_law = u + v - ts_mul(u, v)

    g = specialize(g_series(order), MULTIPLICATIVE)
    expected_g = TruncSeries.from_coefficients(
        [Fraction((-1) ** i, factorial(i + 1)) for i in range(order)], order)

    passed = fgl.series == expected_law and g == expected_g
    return IdentityReport(
        name='nontrivial-quotient',
        passed=passed,
        lhs=f"F = {fgl.series}; g = {g}",
        rhs=f"F = {expected_law}; g = {expected_g}",
        detail=f"order={order}",
    )
