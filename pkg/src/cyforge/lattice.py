"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of ``int`` or ``Fraction``;
Python integers are arbitrary precision, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


class InconsistentSystem(ValueError):
    """The linear system has no solution."""


def _copy(m) -> list[list]:
    return [list(row) for row in m]


def transpose(m) -> list[list]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a, b) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def bareiss_echelon(m) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the reduced rows and the pivot columns. Pivots are chosen as the
    first nonzero entry scanning rows top to bottom, so the result is
    deterministic.
    """
    a = _copy(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                # exact by Sylvester's identity
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_exact(m: Matrix) -> int:
    """Rank over the rationals of an integer (or rational) matrix."""
    if not m or not m[0]:
        return 0
    m = _integerize(m)
    return len(bareiss_echelon(m)[1])


def _integerize(m) -> list[list[int]]:
    """Scale each row of a rational matrix by its common denominator."""
    out = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def determinant(m: Matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(m)
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_diagonal(m: Matrix) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    The result has ``min(rows, cols)`` nonnegative entries with each nonzero
    entry dividing the next; zeros trail.
    """
    a = _copy(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            piv = a[t][t]
            for i in range(t + 1, nrows):
                q = a[i][t] // piv
                if q:
                    for j in range(t, ncols):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    done = False
                    break
            if not done:
                continue
            piv = a[t][t]
            for j in range(t + 1, ncols):
                q = a[t][j] // piv
                if q:
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
            if not done:
                continue
            # pivot must divide the rest of the block
            piv = a[t][t]
            for i in range(t + 1, nrows):
                bad = next((j for j in range(t + 1, ncols) if a[i][j] % piv), None)
                if bad is not None:
                    for j in range(t, ncols):
                        a[t][j] += a[i][j]
                    done = False
                    break
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(nrows, ncols) - len(diag)))
    return diag


@dataclass(frozen=True)
class Solution:
    x: list[Fraction]
    unique: bool
    nullity: int


def solve_rational(a, b) -> Solution:
    """Solve ``a x = b`` exactly over the rationals.

    Free variables are set to zero when the kernel is nontrivial; the
    returned ``unique`` flag is False in that case.
    Raises InconsistentSystem if no solution exists.
    """
    if len(a) != len(b):
        raise ValueError("row count of a must equal length of b")
    ncols = len(a[0]) if a else 0
    aug = _integerize([list(row) + [Fraction(v)] for row, v in zip(a, b)])
    rows, pivots = bareiss_echelon(aug)
    if pivots and pivots[-1] == ncols:
        raise InconsistentSystem("system has no solution")
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = rows[r]
        s = Fraction(row[ncols])
        for j in range(c + 1, ncols):
            if row[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    nullity = ncols - len(pivots)
    return Solution(x, nullity == 0, nullity)


def nullity(m) -> int:
    """Dimension of the right kernel."""
    if not m:
        return 0
    return len(m[0]) - rank_exact(m)
