"""Small exact linear algebra over the rationals (lists of Fraction rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Vector = List[Fraction]
Matrix = List[Vector]


def _as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> Matrix:
    """Reduced row echelon form; returns only the nonzero rows."""
    m = _as_matrix(rows)
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        inv = m[pivot_row][col]
        m[pivot_row] = [x / inv for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return [row for row in m if any(x != 0 for x in row)]


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows))


def det4(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a 4x4 rational matrix by fraction-free elimination."""
    a = _as_matrix(m)
    if len(a) != 4 or any(len(r) != 4 for r in a):
        raise ValueError("expected a 4x4 matrix")
    sign = 1
    detval = Fraction(1)
    for col in range(4):
        pivot = next((r for r in range(col, 4) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        detval *= a[col][col]
        for r in range(col + 1, 4):
            factor = a[r][col] / a[col][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return sign * detval


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def in_span(vector: Sequence, basis: Sequence[Sequence]) -> bool:
    """True when `vector` lies in the row span of `basis`."""
    base = [list(row) for row in basis]
    return rank(base + [list(vector)]) == rank(base)
