"""
Exact linear algebra over the integers and rationals.

Inversion runs fraction-free Gauss-Jordan elimination on [A | I] with the
first nonzero pivot in row order, so results never depend on rounding or on
pivot heuristics.
"""
import math
from fractions import Fraction

from errors import SingularSystemError


def integer_scaled(matrix):
    """
    (integer matrix, scale) with integer matrix == scale * matrix
    """
    scale = 1
    for row in matrix:
        for value in row:
            scale = math.lcm(scale, Fraction(value).denominator)
    scaled = [[int(Fraction(value) * scale) for value in row] for row in matrix]
    return scaled, scale


def fraction_free_inverse(matrix):
    """
    Invert an integer matrix without fractions.

    Returns (adjoint, det) with A^{-1} = adjoint / det. Every intermediate
    division in the Bareiss update is exact.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return [], 1
    work = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    previous = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if work[i][k]), None)
        if pivot_row is None:
            raise SingularSystemError(f"singular matrix: no pivot in column {k}")
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
        pivot = work[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = work[i][k]
            row_i, row_k = work[i], work[k]
            for j in range(2 * n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // previous
        previous = pivot
    # left block is now det * I, det taken up to the sign of the row swaps
    det = work[n - 1][n - 1]
    adjoint = [row[n:] for row in work]
    return adjoint, det


class ExactSolver:
    """
    Solves A x = b for a fixed invertible rational matrix, reusing one inverse
    """

    def __init__(self, matrix):
        self.size = len(matrix)
        scaled, self.scale = integer_scaled(matrix)
        self.adjoint, self.det = fraction_free_inverse(scaled)

    def solve(self, rhs):
        if len(rhs) != self.size:
            raise ValueError(f"right-hand side has {len(rhs)} entries, expected {self.size}")
        rhs = [Fraction(value) * self.scale for value in rhs]
        return [
            sum((a * b for a, b in zip(row, rhs) if a and b), Fraction(0)) / self.det
            for row in self.adjoint
        ]


def rank(matrix):
    """
    Exact rank by Gaussian elimination on Fractions
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    columns = len(rows[0])
    result = 0
    for col in range(columns):
        pivot = next((i for i in range(result, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[result], rows[pivot] = rows[pivot], rows[result]
        head = rows[result]
        for i in range(result + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / head[col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], head)]
        result += 1
        if result == len(rows):
            break
    return result


def determinant(matrix):
    """
    Exact determinant of a rational matrix (Bareiss on the integer-scaled copy)
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scaled, scale = integer_scaled(matrix)
    work = [list(row) for row in scaled]
    sign = 1
    previous = 1
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if work[i][k]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[k][k] * work[i][j] - work[i][k] * work[k][j]) // previous
        previous = work[k][k]
    return Fraction(sign * work[n - 1][n - 1], scale ** n)
