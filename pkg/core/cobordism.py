"""
milnor-basis decomposition and the riemann-roch checks

a rational cobordism class of dimension d is pinned down by its chern numbers;
solving C_I(X) = sum_J alpha_J C_I(P^J) against the products of projective
spaces P^J gives the class sum_J alpha_J p_J in the lazard ring.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import List, Mapping, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from core.chern import (
    LineBundleSpec, Partition, ProjProduct, c1, chern_numbers,
    complete_intersection_chern_numbers, evaluate_at_class, genus_of_roots,
    integrate, partitions_of, tangent_chern_roots, v_polys,
)
from core.exactnum import ZERO
from core.lazard import (
    GenusSpec, LazardElement, inverse_g_series, inverse_log, monomial_element, specialize,
)
from core.models import CobordismClass, DecompositionReport, IdentityReport, RiemannRochReport
from utils.linalg import SingularMatrixError, bareiss_determinant, mat_vec, solve_fraction_free
from utils.memo import memoized

logger = logging.getLogger(__name__)


class CobordismError(ValueError):
    """raised for incomplete chern data and dimension underflow"""


def milnor_basis(d: int) -> List[Partition]:
    """partitions J of d, each standing for P^j1 x ... x P^jm and p_j1 ... p_jm"""
    if d < 0:
        raise CobordismError(f"no cobordism classes in negative dimension {d}")
    return list(partitions_of(d))


@memoized(maxsize=16)
def chern_pairing_matrix(d: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """M[I][J] = C_I(P^J), rows and columns in milnor-basis order"""
    basis = milnor_basis(d)
    if d == 0:
        return ((Fraction(1),),)
    columns = [chern_numbers(ProjProduct(tuple(j))) for j in basis]
    matrix = tuple(tuple(columns[c][i] for c in range(len(basis))) for i in basis)
    if bareiss_determinant(matrix) == 0:
        raise SingularMatrixError(f"chern pairing matrix is singular in degree {d}")
    logger.debug(f"chern pairing matrix for d={d}: {len(basis)}x{len(basis)}")
    return matrix


def pairing_determinant(d: int) -> Fraction:
    return bareiss_determinant(chern_pairing_matrix(d))


def decompose(numbers: Mapping[Partition, Fraction], d: int) -> DecompositionReport:
    """exact milnor-basis coordinates of the class with the given chern numbers"""
    basis = milnor_basis(d)
    missing = [str(i) for i in basis if i not in numbers]
    if missing:
        raise CobordismError(f"missing chern numbers for partitions {', '.join(missing)} of {d}")

    matrix = chern_pairing_matrix(d)
    rhs = [Fraction(numbers[i]) for i in basis]
    coordinates = solve_fraction_free(matrix, rhs)

    reconstructed = mat_vec(matrix, coordinates)
    residual = max((abs(Fraction(r) - n) for r, n in zip(reconstructed, rhs)), default=ZERO)
    if residual:
        raise CobordismError(f"decomposition in degree {d} left residual {residual}")

    return DecompositionReport(
        degree=d,
        basis=basis,
        coordinates=coordinates,
        residual=residual,
        chern_input={i: Fraction(numbers[i]) for i in basis},
    )


def class_of(report: DecompositionReport) -> LazardElement:
    """sum_J alpha_J p_J"""
    total = LazardElement.zero()
    for partition, alpha in zip(report.basis, report.coordinates):
        if alpha:
            total = total + monomial_element(partition, alpha)
    return total


def ell(variety: ProjProduct) -> CobordismClass:
    report = decompose(chern_numbers(variety), variety.dimension)
    return CobordismClass(class_of(report), variety.dimension)


def ell_complete_intersection(variety: ProjProduct, bundles: Sequence[LineBundleSpec]) -> CobordismClass:
    """class of the virtual zero locus of the bundles"""
    report = _complete_intersection_decomposition(variety, bundles)
    return CobordismClass(class_of(report), report.degree)


def _complete_intersection_decomposition(variety: ProjProduct,
                                         bundles: Sequence[LineBundleSpec]) -> DecompositionReport:
    if len(bundles) > variety.dimension:
        raise CobordismError(f"{len(bundles)} bundles cut {variety} below dimension 0")
    degree = variety.dimension - len(bundles)
    return decompose(complete_intersection_chern_numbers(variety, bundles), degree)


def _as_lazard(value) -> LazardElement:
    return value if isinstance(value, LazardElement) else LazardElement.constant(value)


def _check_order(variety: ProjProduct, order: int):
    if order <= variety.dimension:
        raise CobordismError(f"order {order} must exceed dim {variety} = {variety.dimension}")


# riemann-roch


def hrr_lhs(variety: ProjProduct, order: int) -> LazardElement:
    """integral of g^-1(T_X)"""
    _check_order(variety, order)
    todd_inverse = genus_of_roots(inverse_g_series(order), tangent_chern_roots(variety))
    return _as_lazard(integrate(todd_inverse))


def hrr_check(variety: ProjProduct, order: int) -> RiemannRochReport:
    lhs = hrr_lhs(variety, order)
    report = decompose(chern_numbers(variety), variety.dimension)
    rhs = class_of(report)
    report.lhs, report.rhs, report.passed = str(lhs), str(rhs), lhs == rhs
    logger.debug(f"hrr {variety}: {lhs} vs {rhs}")
    return RiemannRochReport('hrr', str(variety), [], order, lhs, rhs, report)


def hrr_via_chern_numbers(variety: ProjProduct, order: int) -> RiemannRochReport:
    """sum_I v_{d,I} C_I(X) against the direct integral"""
    _check_order(variety, order)
    d = variety.dimension
    universal = v_polys(d, inverse_g_series(order))
    numbers = chern_numbers(variety)
    via_numbers = LazardElement.zero()
    for partition, coefficient in universal.items():
        via_numbers = via_numbers + _as_lazard(coefficient) * numbers[partition]
    return RiemannRochReport('hrr-chern-numbers', str(variety), [], order,
                             via_numbers, hrr_lhs(variety, order))


def hrrc_lhs(variety: ProjProduct, bundles: Sequence[LineBundleSpec], order: int) -> LazardElement:
    """integral of prod_j h^-1(c1 L_j) * g^-1(T_X)"""
    _check_order(variety, order)
    if len(bundles) > variety.dimension:
        raise CobordismError(f"{len(bundles)} bundles cut {variety} below dimension 0")
    exponential = inverse_log(order)
    integrand = genus_of_roots(inverse_g_series(order), tangent_chern_roots(variety))
    for bundle in bundles:
        integrand = integrand * evaluate_at_class(exponential, c1(bundle))
    return _as_lazard(integrate(integrand))


def hrrc_check(variety: ProjProduct, bundles: Sequence[LineBundleSpec], order: int) -> RiemannRochReport:
    lhs = hrrc_lhs(variety, bundles, order)
    report = _complete_intersection_decomposition(variety, bundles)
    rhs = class_of(report)
    report.lhs, report.rhs, report.passed = str(lhs), str(rhs), lhs == rhs
    return RiemannRochReport('hrrc', str(variety), [str(b) for b in bundles], order, lhs, rhs, report)


def genus_value(variety: ProjProduct, spec: GenusSpec, order: int,
                bundles: Sequence[LineBundleSpec] = ()) -> Fraction:
    """genus of X (or of the virtual complete intersection) for a specialization"""
    _check_order(variety, order)
    # only p_1 .. p_dim reach the top degree
    order = variety.dimension + 1
    phi = specialize(inverse_g_series(order), spec)
    integrand = genus_of_roots(phi, tangent_chern_roots(variety))
    if bundles:
        exponential = specialize(inverse_log(order), spec)
        for bundle in bundles:
            integrand = integrand * evaluate_at_class(exponential, c1(bundle))
    return Fraction(integrate(integrand))


# suites


def products_up_to(max_dimension: int) -> List[ProjProduct]:
    """every ordered product P^r1 x ... x P^rk with 1 <= dim <= max_dimension"""
    varieties = []
    for d in range(1, max_dimension + 1):
        for partition in partitions_of(d):
            varieties.extend(ProjProduct(tuple(f)) for f in multiset_permutations(list(partition)))
    return varieties


def bundle_choices(variety: ProjProduct, count: int, low: int, high: int) -> List[Tuple[LineBundleSpec, ...]]:
    """unordered choices of `count` line bundles with multidegrees in [low, high]"""
    degrees = list(product(range(low, high + 1), repeat=variety.nfactors))
    bundles = [LineBundleSpec(variety, a) for a in degrees]
    if count == 1:
        return [(b,) for b in bundles]
    choices = []
    for i, first in enumerate(bundles):
        for second in bundles[i:]:
            choices.append((first, second))
    return choices


def verify_basis_idempotence(d: int) -> IdentityReport:
    """decompose(C(P^J)) is the unit vector at J"""
    basis = milnor_basis(d)
    failures = []
    for index, partition in enumerate(basis):
        if d == 0:
            numbers = {Partition(): Fraction(1)}
        else:
            numbers = chern_numbers(ProjProduct(tuple(partition)))
        coordinates = decompose(numbers, d).coordinates
        expected = [Fraction(int(k == index)) for k in range(len(basis))]
        if coordinates != expected:
            failures.append(f"{partition}: {[str(c) for c in coordinates]}")
    return IdentityReport(
        name=f'milnor-basis[d={d}]',
        passed=not failures,
        lhs='; '.join(failures) or 'identity',
        rhs='identity',
        detail=f"det={pairing_determinant(d)}",
    )


def verify_ell_multiplicativity(first: ProjProduct, second: ProjProduct) -> IdentityReport:
    lhs = ell(first.times(second)).value
    rhs = ell(first).value * ell(second).value
    return IdentityReport(f'ell-multiplicativity[{first}x{second}]', lhs == rhs, str(lhs), str(rhs))

