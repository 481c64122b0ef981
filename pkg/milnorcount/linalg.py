"""
Exact linear algebra over the rationals: row reduction, ranks, determinants and
primitive integer vectors. Every entry is an int or a Fraction, never a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Vector = Sequence[Fraction]


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row echelon form by exact Gauss-Jordan elimination.
    :param rows: matrix as a list of rows of ints or Fractions.
    :return: the nonzero rows of the reduced matrix and the pivot column of each row.
    """
    matrix = [[Fraction(entry) for entry in row] for row in rows]
    if not matrix:
        return [], []
    n_rows, n_cols = len(matrix), len(matrix[0])
    pivots = []
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row == n_rows:
            break
        candidate = next(
            (r for r in range(pivot_row, n_rows) if matrix[r][col] != 0), None
        )
        if candidate is None:
            continue
        matrix[pivot_row], matrix[candidate] = matrix[candidate], matrix[pivot_row]
        pivot_value = matrix[pivot_row][col]
        matrix[pivot_row] = [entry / pivot_value for entry in matrix[pivot_row]]
        for r in range(n_rows):
            if r != pivot_row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return matrix[:pivot_row], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def determinant(square: Sequence[Sequence[int]]) -> int:
    """
    Determinant of an integer matrix by fraction-free Bareiss elimination.
    """
    matrix = [list(map(int, row)) for row in square]
    size = len(matrix)
    if size == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(size - 1):
        if matrix[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if matrix[r][k] != 0), None)
            if swap is None:
                return 0
            matrix[k], matrix[swap] = matrix[swap], matrix[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                matrix[i][j] = (
                    matrix[i][j] * matrix[k][k] - matrix[i][k] * matrix[k][j]
                ) // previous
        previous = matrix[k][k]
    return sign * matrix[size - 1][size - 1]


def primitive_integer_vector(vector: Sequence) -> Tuple[Tuple[int, ...], Fraction]:
    """
    Scale a nonzero rational vector to its canonical primitive integer form: integer
    entries with GCD 1 and a positive first nonzero entry.
    :return: the primitive vector w and the rational scale mu with vector = mu * w.
    """
    fractions = [Fraction(entry) for entry in vector]
    if all(entry == 0 for entry in fractions):
        raise ValueError("Cannot normalize the zero vector.")
    common_denominator = math.lcm(*(entry.denominator for entry in fractions))
    integers = [int(entry * common_denominator) for entry in fractions]
    content = math.gcd(*integers)
    leading = next(entry for entry in integers if entry != 0)
    if leading < 0:
        content = -content
    primitive = tuple(entry // content for entry in integers)
    return primitive, Fraction(content, common_denominator)


class RowSpace:
    """
    Incrementally grown span of rational vectors, kept in reduced echelon form so
    that membership tests are a single reduction.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: Dict[int, List[Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Vector) -> List[Fraction]:
        residual = [Fraction(entry) for entry in vector]
        for pivot, row in self._rows.items():
            if residual[pivot] != 0:
                factor = residual[pivot]
                residual = [a - factor * b for a, b in zip(residual, row)]
        return residual

    def contains(self, vector: Vector) -> bool:
        return all(entry == 0 for entry in self.reduce(vector))

    def add(self, vector: Vector) -> bool:
        """
        Add a vector to the span.
        :return: True if the rank increased.
        """
        residual = self.reduce(vector)
        pivot: Optional[int] = next((i for i, e in enumerate(residual) if e != 0), None)
        if pivot is None:
            return False
        pivot_value = residual[pivot]
        residual = [entry / pivot_value for entry in residual]
        for other_pivot, row in list(self._rows.items()):
            if row[pivot] != 0:
                factor = row[pivot]
                self._rows[other_pivot] = [a - factor * b for a, b in zip(row, residual)]
        self._rows[pivot] = residual
        return True

    def copy(self) -> RowSpace:
        space = RowSpace(self.dim)
        space._rows = {pivot: list(row) for pivot, row in self._rows.items()}
        return space


def coordinates_in_basis(pivots: List[int], vector: Vector) -> List[Fraction]:
    """
    Coordinates of a vector of the span in a reduced echelon basis: since every basis
    row has a 1 on its pivot and zeros on the other pivots, they are read off directly.
    """
    return [Fraction(vector[pivot]) for pivot in pivots]
