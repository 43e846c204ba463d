import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cyforge.lattice import (
    InconsistentSystem,
    determinant,
    matmul,
    nullity,
    rank_exact,
    smith_diagonal,
    solve_rational,
    transpose,
)

small_int = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def random_unimodular(n, rng, steps=12):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return [[rng.choice([-1, 1])]]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        for c in range(n):
            u[i][c] += k * u[j][c]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u


def test_rank_examples():
    assert rank_exact([[1, 2], [2, 4]]) == 1
    assert rank_exact([[0, 0], [0, 0]]) == 0
    assert rank_exact([[Fraction(1, 2), 1], [1, 2]]) == 1
    assert rank_exact([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2


def test_determinant_and_smith_examples():
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[1, 2], [2, 4]]) == 0
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[0, 0], [0, 0]]) == [0, 0]
    assert smith_diagonal([[5, 0, 0, 0], [0, 5, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]]) == [5, 5, 5, 5]


def test_solve_rational_unique_and_inconsistent():
    sol = solve_rational([[1, 1], [1, -1]], [3, 1])
    assert sol.unique and sol.x == [2, 1]
    sol = solve_rational([[1, 1]], [2])
    assert not sol.unique and sol.nullity == 1
    with pytest.raises(InconsistentSystem):
        solve_rational([[1, 1], [2, 2]], [1, 3])


@given(matrices())
def test_rank_transpose_invariant(m):
    assert rank_exact(m) == rank_exact(transpose(m))


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank_exact(m) == sp.Matrix(m).rank()
    assert nullity(m) == len(m[0]) - rank_exact(m)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sp.Matrix(m).det()


@settings(max_examples=60)
@given(matrices(4, 4), st.integers(0, 10**6))
def test_smith_invariant_under_unimodular(m, seed):
    rng = random.Random(seed)
    u = random_unimodular(len(m), rng)
    v = random_unimodular(len(m[0]), rng)
    d = smith_diagonal(m)
    assert smith_diagonal(matmul(matmul(u, m), v)) == d
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == rank_exact(m)
