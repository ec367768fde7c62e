"""
fraction-free (bareiss) elimination over exact rationals
"""

import logging
from fractions import Fraction
from math import lcm
from typing import List, Sequence

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Fraction]]


class SingularMatrixError(ArithmeticError):
    """raised when elimination runs out of pivots"""


def _check_square(matrix: Matrix) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError(f"expected a square {n}x{n} matrix")
    return n


def _integer_rows(rows: Sequence[Sequence[Fraction]]):
    """scale each row to integers, returning (rows, scale factors)"""
    scaled, factors = [], []
    for row in rows:
        factor = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        scaled.append([int(Fraction(x) * factor) for x in row])
        factors.append(factor)
    return scaled, factors


def _eliminate(rows: List[List[int]], n: int) -> int:
    """in-place bareiss forward elimination on the first n columns, returns the swap sign"""
    sign = 1
    previous = 1
    width = len(rows[0]) if rows else 0
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {k}")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                # exact by sylvester's identity
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = rows[k][k]
    return sign


def bareiss_determinant(matrix: Matrix) -> Fraction:
    """exact determinant"""
    n = _check_square(matrix)
    if n == 0:
        return Fraction(1)
    rows, factors = _integer_rows(matrix)
    try:
        sign = _eliminate(rows, n)
    except SingularMatrixError:
        return Fraction(0)
    scale = 1
    for factor in factors:
        scale *= factor
    return Fraction(sign * rows[n - 1][n - 1], scale)


def solve_many(matrix: Matrix, columns: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """solve matrix * x = column for every right-hand side column"""
    n = _check_square(matrix)
    for column in columns:
        if len(column) != n:
            raise ValueError(f"right-hand side of length {len(column)} for a {n}x{n} system")
    if n == 0:
        return [[] for _ in columns]

    augmented = [list(matrix[i]) + [column[i] for column in columns] for i in range(n)]
    rows, _ = _integer_rows(augmented)
    _eliminate(rows, n)
    logger.debug(f"bareiss elimination done: {n}x{n}, {len(columns)} right-hand sides")

    solutions = []
    for c in range(len(columns)):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = Fraction(rows[i][n + c])
            for j in range(i + 1, n):
                acc -= rows[i][j] * x[j]
            x[i] = acc / rows[i][i]
        solutions.append(x)
    return solutions


def solve_fraction_free(matrix: Matrix, rhs: Sequence[Fraction]) -> List[Fraction]:
    """exact solution of matrix * x = rhs"""
    return solve_many(matrix, [rhs])[0]


def inverse(matrix: Matrix) -> List[List[Fraction]]:
    """exact inverse, rows of the result"""
    n = _check_square(matrix)
    identity = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    columns = solve_many(matrix, identity)
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def mat_vec(matrix: Matrix, vector: Sequence) -> List:
    """matrix times vector; vector entries may be any ring elements"""
    result = []
    for row in matrix:
        total = 0
        for a, x in zip(row, vector):
            if a:
                total = total + x * a
        result.append(total)
    return result
