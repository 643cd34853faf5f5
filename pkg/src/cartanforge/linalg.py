"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` (ints are accepted on input).
Everything here is small (a few hundred unknowns at most), so a plain
Gauss-Jordan elimination on Fractions is fast enough and keeps results exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


class SingularMatrix(ValueError):
    pass


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    mat = to_fractions(rows)
    if not mat:
        return [], []
    ncols = len(mat[0]) if ncols is None else ncols
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for k in range(r, len(mat)):
            if mat[k][col]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        prow = mat[r]
        for k in range(len(mat)):
            if k != r and mat[k][col]:
                factor = mat[k][col]
                mat[k] = [a - factor * b for a, b in zip(mat[k], prow)]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in echelon form."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    reduced, pivots = rref(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[free]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution of A x = b (free variables set to 0), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    augmented = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    reduced, pivots = rref(augmented, n)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in reduced]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    mat = to_fractions(rows)
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = next((k for k in range(col, n) if mat[k][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for k in range(col + 1, n):
            if mat[k][col]:
                factor = mat[k][col] * inv
                mat[k] = [a - factor * b for a, b in zip(mat[k], mat[col])]
    return det


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def in_span(basis: Sequence[Sequence], vec: Sequence) -> bool:
    """Whether ``vec`` is a linear combination of the rows of ``basis``."""
    if not basis:
        return not any(vec)
    return rank(list(basis) + [list(vec)]) == rank(basis)
