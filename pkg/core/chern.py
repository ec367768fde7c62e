"""
intersection calculus on products of projective spaces

the chow ring of P^r1 x ... x P^rk is Q[H1, ..., Hk]/(Hi^(ri+1)); tangent
bundles split (euler sequence) into the hyperplane classes with multiplicity
ri+1, hypersurfaces and complete intersections are handled virtually by
adjunction without ever leaving the ambient ring.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from core.exactnum import ONE, ZERO, format_rational, format_terms
from core.series import TruncSeries, ts_exp, ts_inv
from utils.linalg import inverse, mat_vec
from utils.memo import memoized

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


class ChernError(ValueError):
    """raised for malformed varieties/bundles and insufficient truncation"""


@dataclass(frozen=True)
class ProjProduct:
    """P^r1 x ... x P^rk"""
    factors: Tuple[int, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ChernError("a product of projective spaces needs at least one factor")
        if any(isinstance(r, bool) or not isinstance(r, int) or r < 1 for r in factors):
            raise ChernError(f"projective space dimensions must be positive integers: {factors}")
        object.__setattr__(self, 'factors', factors)

    @property
    def dimension(self) -> int:
        return sum(self.factors)

    @property
    def nfactors(self) -> int:
        return len(self.factors)

    def times(self, other: 'ProjProduct') -> 'ProjProduct':
        return ProjProduct(self.factors + other.factors)

    def __str__(self):
        return 'x'.join(f"P{r}" for r in self.factors)


@dataclass(frozen=True)
class LineBundleSpec:
    """O(a1, ..., ak) on a product of projective spaces"""
    base: ProjProduct
    multidegree: Tuple[int, ...]

    def __post_init__(self):
        multidegree = tuple(self.multidegree)
        if len(multidegree) != self.base.nfactors:
            raise ChernError(f"O{multidegree} does not match {self.base} ({self.base.nfactors} factors)")
        object.__setattr__(self, 'multidegree', multidegree)

    def __str__(self):
        return f"O({','.join(str(a) for a in self.multidegree)})"


class Partition(tuple):
    """weakly decreasing positive parts; the empty partition is written '0'"""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ChernError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def __str__(self):
        return '+'.join(str(p) for p in self) if self else '0'

    def __repr__(self):
        return f"Partition({self})"


@memoized(maxsize=64)
def partitions_of(d: int) -> Tuple[Partition, ...]:
    """all partitions of d, reverse-lexicographic: (4), (3,1), (2,2), (2,1,1), (1,1,1,1)"""
    if d < 0:
        raise ChernError(f"cannot partition a negative number: {d}")
    if d == 0:
        return (Partition(),)
    found = []
    for multiplicities in partitions(d):
        parts = []
        for part, count in multiplicities.items():
            parts.extend([part] * count)
        found.append(Partition(parts))
    return tuple(sorted(found, reverse=True))


class ChowClass:
    """element of Q[H1..Hk]/(Hi^(ri+1)), coefficients rational or lazard"""

    __slots__ = ('base', '_terms')

    def __init__(self, base: ProjProduct, terms: Optional[Mapping[Exponent, object]] = None):
        clean = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != base.nfactors or any(e < 0 for e in exponent):
                raise ChernError(f"bad exponent {exponent} on {base}")
            if any(e > r for e, r in zip(exponent, base.factors)):
                continue
            if isinstance(coeff, int):
                coeff = Fraction(coeff)
            if coeff:
                clean[exponent] = coeff
        self.base = base
        self._terms = clean

    @classmethod
    def _raw(cls, base: ProjProduct, terms: Dict[Exponent, object]) -> 'ChowClass':
        element = cls.__new__(cls)
        element.base = base
        element._terms = terms
        return element

    @classmethod
    def constant(cls, base: ProjProduct, value) -> 'ChowClass':
        return cls(base, {(0,) * base.nfactors: value})

    @classmethod
    def one(cls, base: ProjProduct) -> 'ChowClass':
        return cls.constant(base, ONE)

    @classmethod
    def zero(cls, base: ProjProduct) -> 'ChowClass':
        return cls(base)

    @classmethod
    def hyperplane(cls, base: ProjProduct, index: int) -> 'ChowClass':
        """H_index, 1-based"""
        if not 1 <= index <= base.nfactors:
            raise ChernError(f"no factor {index} in {base}")
        return cls(base, {tuple(int(i == index - 1) for i in range(base.nfactors)): ONE})

    @property
    def terms(self) -> Dict[Exponent, object]:
        return dict(self._terms)

    def coefficient(self, exponent: Sequence[int]):
        return self._terms.get(tuple(exponent), ZERO)

    def constant_term(self):
        return self._terms.get((0,) * self.base.nfactors, ZERO)

    def homogeneous_part(self, degree: int) -> 'ChowClass':
        return ChowClass._raw(self.base, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def is_zero(self) -> bool:
        return not self._terms

    def map_coefficients(self, func) -> 'ChowClass':
        return ChowClass(self.base, {e: func(c) for e, c in self._terms.items()})

    def _check_base(self, other: 'ChowClass'):
        if self.base != other.base:
            raise ChernError(f"classes live on different varieties: {self.base} vs {other.base}")

    def __add__(self, other):
        if not isinstance(other, ChowClass):
            other = ChowClass.constant(self.base, other)
        self._check_base(other)
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            total = terms[exponent] + coeff if exponent in terms else coeff
            if total:
                terms[exponent] = total
            else:
                terms.pop(exponent, None)
        return ChowClass._raw(self.base, terms)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass._raw(self.base, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ChowClass):
            if isinstance(other, int):
                other = Fraction(other)
            terms = {}
            for exponent, coeff in self._terms.items():
                product = coeff * other
                if product:
                    terms[exponent] = product
            return ChowClass._raw(self.base, terms)

        self._check_base(other)
        bounds = self.base.factors
        terms = {}
        for left_exp, left_coeff in self._terms.items():
            for right_exp, right_coeff in other._terms.items():
                key = tuple(a + b for a, b in zip(left_exp, right_exp))
                if any(e > r for e, r in zip(key, bounds)):
                    continue
                product = left_coeff * right_coeff
                terms[key] = terms[key] + product if key in terms else product
        return ChowClass._raw(self.base, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ChowClass.one(self.base)
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> 'ChowClass':
        """inverse of a class with invertible constant term (geometric series, nilpotent tail)"""
        constant = self.constant_term()
        if isinstance(constant, (int, Fraction)):
            if constant == 0:
                raise ChernError("class with zero constant term is not invertible")
            inverse_constant = ONE / constant
        else:
            inverse_constant = ONE / constant.as_scalar()
        one = ChowClass.one(self.base)
        x = self * inverse_constant - one
        result = one
        for _ in range(self.base.dimension):
            result = one - x * result
        return result * inverse_constant

    def __eq__(self, other):
        if not isinstance(other, ChowClass):
            other = ChowClass.constant(self.base, other)
        return self.base == other.base and self._terms == other._terms

    def __hash__(self):
        return hash((self.base, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def _factor_names(self, exponent: Exponent) -> List[str]:
        names = []
        single = self.base.nfactors == 1
        for index, e in enumerate(exponent, start=1):
            symbol = 'H' if single else f"H{index}"
            if e == 1:
                names.append(symbol)
            elif e > 1:
                names.append(f"{symbol}^{e}")
        return names

    def __str__(self):
        pieces = []
        for exponent in sorted(self._terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            coeff = self._terms[exponent]
            parts = coeff.formatted_terms() if hasattr(coeff, 'formatted_terms') else [('', Fraction(coeff))]
            for body, q in parts:
                pieces.append((q, ([body] if body else []) + self._factor_names(exponent)))
        return format_terms(pieces)

    def __repr__(self):
        return f"ChowClass({self.base}, '{self}')"


# line bundles and tangent bundles


def c1(bundle: LineBundleSpec) -> ChowClass:
    """first chern class sum a_i H_i"""
    total = ChowClass.zero(bundle.base)
    for index, a in enumerate(bundle.multidegree, start=1):
        if a:
            total = total + ChowClass.hyperplane(bundle.base, index) * a
    return total


def tangent_chern_roots(variety: ProjProduct) -> List[Tuple[ChowClass, int]]:
    """euler sequence: T of P^r has roots H with multiplicity r+1"""
    return [(ChowClass.hyperplane(variety, index), r + 1)
            for index, r in enumerate(variety.factors, start=1)]


def total_chern_class(roots: Sequence[Tuple[ChowClass, int]], base: Optional[ProjProduct] = None) -> ChowClass:
    """prod (1 + x)^m over the roots"""
    base = base or _base_of(roots)
    total = ChowClass.one(base)
    for root, multiplicity in roots:
        total = total * (root + ONE) ** multiplicity
    return total


def chern_classes(total: ChowClass, top: Optional[int] = None) -> List[ChowClass]:
    """c_0 .. c_top as homogeneous parts of a total chern class"""
    top = total.base.dimension if top is None else top
    return [total.homogeneous_part(k) for k in range(top + 1)]


def _base_of(roots: Sequence[Tuple[ChowClass, int]]) -> ProjProduct:
    if not roots:
        raise ChernError("cannot infer the variety from an empty root list")
    return roots[0][0].base


def evaluate_at_class(phi: TruncSeries, x: ChowClass) -> ChowClass:
    """phi(x) for a nilpotent class x (no constant term)"""
    if not phi.is_univariate:
        raise ChernError("genus series must be univariate")
    dimension = x.base.dimension
    if phi.order <= dimension:
        raise ChernError(f"series order {phi.order} is too small for dimension {dimension}")
    if x.constant_term():
        raise ChernError("can only evaluate a series at a class without constant term")
    result = ChowClass.zero(x.base)
    for degree in range(min(phi.max_degree(), dimension), -1, -1):
        result = result * x
        coeff = phi.coefficient(degree)
        if coeff:
            result = result + coeff
    return result


def genus_of_roots(phi: TruncSeries, roots: Sequence[Tuple[ChowClass, int]],
                   base: Optional[ProjProduct] = None) -> ChowClass:
    """multiplicative class prod phi(x)^m"""
    if phi.constant_term() == 0:
        raise ChernError("genus series needs a unit constant term")
    base = base or _base_of(roots)
    if phi.order <= base.dimension:
        raise ChernError(f"series order {phi.order} is too small for dimension {base.dimension}")
    result = ChowClass.one(base)
    for root, multiplicity in roots:
        result = result * evaluate_at_class(phi, root) ** multiplicity
    return result


def integrate(c: ChowClass):
    """coefficient of the point class H1^r1 ... Hk^rk"""
    return c.coefficient(c.base.factors)


# chern numbers


def _chern_numbers_from(classes: List[ChowClass], fundamental: ChowClass,
                        degree: int) -> Dict[Partition, object]:
    numbers = {}
    for partition in partitions_of(degree):
        product = fundamental
        for part in partition:
            product = product * classes[part]
        numbers[partition] = integrate(product)
    return numbers


@memoized(maxsize=256)
def chern_numbers(variety: ProjProduct) -> Mapping[Partition, Fraction]:
    """C_I(X) for every partition I of dim X, as a read-only shared view"""
    total = total_chern_class(tangent_chern_roots(variety))
    classes = chern_classes(total)
    return MappingProxyType(_chern_numbers_from(classes, ChowClass.one(variety), variety.dimension))


def complete_intersection_chern_numbers(variety: ProjProduct,
                                        bundles: Sequence[LineBundleSpec]) -> Dict[Partition, Fraction]:
    """chern numbers of the virtual zero locus of sections of the bundles (iterated adjunction)"""
    for bundle in bundles:
        if bundle.base != variety:
            raise ChernError(f"{bundle} lives on {bundle.base}, not {variety}")
    degree = variety.dimension - len(bundles)
    if degree < 0:
        raise ChernError(f"{len(bundles)} bundles on a variety of dimension {variety.dimension}")

    total = total_chern_class(tangent_chern_roots(variety))
    fundamental = ChowClass.one(variety)
    for bundle in bundles:
        first = c1(bundle)
        total = total * (first + ONE).inverse()
        fundamental = fundamental * first
    classes = chern_classes(total, degree)
    return _chern_numbers_from(classes, fundamental, degree)


def hypersurface_chern_numbers(variety: ProjProduct, bundle: LineBundleSpec) -> Dict[Partition, Fraction]:
    """adjunction: c(T_Z) = c(T_X)/(1 + c1(L)), integrals against c1(L)"""
    if variety.dimension < 2:
        raise ChernError(f"hypersurfaces need an ambient dimension >= 2, {variety} has {variety.dimension}")
    return complete_intersection_chern_numbers(variety, [bundle])


def chern_number_table(numbers: Mapping[Partition, object]) -> Dict[str, str]:
    """json-ready map keyed by partition strings like '2+1+1'"""
    return {str(p): (format_rational(v) if isinstance(v, (int, Fraction)) else str(v))
            for p, v in numbers.items()}


# universal polynomials v_{d,I}


def _multiply_polynomials(left: Dict[Exponent, int], right: Dict[Exponent, int]) -> Dict[Exponent, int]:
    product: Dict[Exponent, int] = {}
    for a, x in left.items():
        for b, y in right.items():
            key = tuple(i + j for i, j in zip(a, b))
            product[key] = product.get(key, 0) + x * y
    return product


def _elementary(k: int, nvars: int) -> Dict[Exponent, int]:
    terms = {}
    for subset in combinations(range(nvars), k):
        terms[tuple(int(i in subset) for i in range(nvars))] = 1
    return terms


@memoized(maxsize=16)
def _monomial_to_elementary(d: int) -> Tuple[Tuple[Partition, ...], List[List[Fraction]]]:
    """partitions of d and the matrix taking monomial-basis coordinates to elementary-basis ones"""
    basis = partitions_of(d)
    transition = []  # transition[mu][lambda] = [x^lambda] e_mu
    for mu in basis:
        expansion = {(0,) * d: 1}
        for part in mu:
            expansion = _multiply_polynomials(expansion, _elementary(part, d))
        row = []
        for lam in basis:
            exponent = tuple(lam) + (0,) * (d - len(lam))
            row.append(Fraction(expansion.get(exponent, 0)))
        transition.append(row)
    transposed = [[transition[j][i] for j in range(len(basis))] for i in range(len(basis))]
    logger.debug(f"symmetric transition matrix for d={d}: {len(basis)}x{len(basis)}")
    return basis, inverse(transposed)


def v_polys(d: int, g_inverse: TruncSeries) -> Dict[Partition, object]:
    """v_{d,I}: the degree-d part of prod_j g_inverse(x_j) written in the c_I of the roots"""
    if g_inverse.order <= d:
        raise ChernError(f"series order {g_inverse.order} is too small for degree {d}")
    if d == 0:
        return {Partition(): ONE}
    coefficients = [g_inverse.coefficient(k) for k in range(d + 1)]
    constant = coefficients[0]

    basis, to_elementary = _monomial_to_elementary(d)
    monomial_coordinates = []
    for lam in basis:
        value = ONE
        for part in lam:
            value = value * coefficients[part]
        for _ in range(d - len(lam)):
            value = value * constant
        monomial_coordinates.append(value)
    elementary = mat_vec(to_elementary, monomial_coordinates)
    return {mu: (value if value != 0 else ZERO) for mu, value in zip(basis, elementary)}


def v_poly(d: int, partition: Partition, g_inverse: TruncSeries):
    """single universal coefficient v_{d,I}"""
    partition = Partition(partition)
    if partition.weight != d:
        raise ChernError(f"{partition} is not a partition of {d}")
    return v_polys(d, g_inverse)[partition]


# classical genus series


def todd_series(order: int) -> TruncSeries:
    """u/(1 - e^-u)"""
    u = TruncSeries.variable('u', ('u',), order + 1)
    one_minus_exp = TruncSeries.one(('u',), order + 1) - ts_exp(-u)
    return ts_inv(one_minus_exp.divide_by_variable())
