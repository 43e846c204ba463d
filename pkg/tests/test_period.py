import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import read_support
from cyforge.period import Support, compress, constant_term_power, constant_terms, period_step, principal_period
from test_polytope import random_gl4

vec = st.tuples(*[st.integers(-2, 2)] * 4).filter(any)
supports = st.lists(vec, min_size=2, max_size=5, unique=True)


def compositions(k, n):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in compositions(k - first, n - 1):
            yield (first,) + rest


def brute_force(monomials, k):
    """Constant term of (sum of monomials)^k by summing multinomial coefficients."""
    total = 0
    for counts in compositions(k, len(monomials)):
        if any(sum(c * m[i] for c, m in zip(counts, monomials)) for i in range(4)):
            continue
        coeff = math.factorial(k)
        for c in counts:
            coeff //= math.factorial(c)
        total += coeff
    return total


def test_quintic_values():
    s = read_support("quintic")
    ct = constant_terms(s, 15)
    assert ct[5] == 120 and ct[10] == 113400 and ct[15] == math.factorial(15) // math.factorial(3) ** 5
    assert all(ct[k] == 0 for k in range(16) if k % 5)
    assert period_step(principal_period(s, 15)) == 5


def test_compress_and_step():
    s = principal_period(read_support("x44a"), 12)
    c, g = compress(s)
    assert g == 2 and c.order == 6
    assert c.coefficients[1] == 14  # every monomial's inverse is present


def test_support_validation():
    with pytest.raises(ValueError):
        Support([(0, 0, 0, 0), (1, 0, 0, 0)])
    with pytest.raises(ValueError):
        Support([(1, 0, 0, 0), (1, 0, 0, 0)])
    with pytest.raises(ValueError):
        Support([])


@settings(max_examples=40, deadline=None)
@given(supports, st.integers(0, 8))
def test_matches_brute_force(monomials, k):
    assert constant_term_power(Support(monomials), k) == brute_force(monomials, k)


@pytest.mark.parametrize("name", ["cross", "x44b", "x48a1"])
def test_matches_brute_force_on_samples(name):
    s = read_support(name)
    ct = constant_terms(s, 6)
    assert ct == [brute_force(list(s.monomials), k) for k in range(7)]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["quintic", "x44a", "x48b"]), st.integers(0, 10**6))
def test_gl4_invariance(name, seed):
    s = read_support(name)
    u = random_gl4(random.Random(seed))
    moved = Support([tuple(sum(u[i][j] * m[j] for j in range(4)) for i in range(4)) for m in s.monomials])
    assert constant_terms(moved, 12) == constant_terms(s, 12)


@settings(max_examples=20, deadline=None)
@given(supports, st.integers(0, 10**6))
def test_gl4_invariance_random_support(monomials, seed):
    u = random_gl4(random.Random(seed))
    moved = [tuple(sum(u[i][j] * m[j] for j in range(4)) for i in range(4)) for m in monomials]
    assert constant_terms(Support(moved), 8) == constant_terms(Support(monomials), 8)
