"""Exact rank and determinant over any field of Python scalars."""

from fractions import Fraction

from .poly import bareiss_det


def rank(matrix):
    rows = [[Fraction(c) if isinstance(c, int) else c for c in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            factor = rows[i][col] / p
            if factor:
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def det(matrix):
    return bareiss_det(matrix)
