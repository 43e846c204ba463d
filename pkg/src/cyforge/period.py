"""Principal period of a one-parameter Laurent family as a constant-term series.

With every non-constant coefficient set to ``-z`` the period is
``sum_k CT(S^k) z^k`` where ``S`` is the sum of the support monomials and
``CT`` extracts the constant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import NotFullDimensional, NotReflexive
from .polytope import LatticePolytope, is_reflexive
from .series import RationalSeries

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Support:
    monomials: tuple[Exponent, ...]

    def __init__(self, monomials: Iterable[Sequence[int]]):
        mons = tuple(tuple(int(x) for x in m) for m in monomials)
        if not mons:
            raise ValueError("support must be nonempty")
        if len(set(mons)) != len(mons):
            raise ValueError("support monomials must be distinct")
        if len({len(m) for m in mons}) != 1:
            raise ValueError("all exponent vectors need the same length")
        if any(not any(m) for m in mons):
            raise ValueError("the constant monomial is not part of a support")
        object.__setattr__(self, "monomials", mons)

    @property
    def rank(self) -> int:
        return len(self.monomials[0])

    def __len__(self):
        return len(self.monomials)


class _Codec:
    """Packs exponent vectors into single integers so shifts become additions."""

    def __init__(self, dim: int, bound: int):
        self.offset = bound
        self.radix = 2 * bound + 1
        self.weights = [self.radix ** c for c in range(dim)]
        self.zero = sum(bound * w for w in self.weights)

    def shift(self, m: Exponent) -> int:
        return sum(x * w for x, w in zip(m, self.weights))

    def negate(self, key: int) -> int:
        return 2 * self.zero - key

    def decode_many(self, keys: np.ndarray) -> np.ndarray:
        out = np.empty((len(keys), len(self.weights)), dtype=np.int64)
        rest = keys.copy()
        for c in range(len(self.weights)):
            rest, r = np.divmod(rest, self.radix)
            out[:, c] = r - self.offset
        return out


def _pruning_halfspaces(s: Support) -> tuple[np.ndarray, np.ndarray]:
    """Inequalities ``A x + c >= 0`` describing the convex hull of the support.

    Falls back to the bounding box when the hull is not a full-dimensional
    polytope around the origin.
    """
    dim = s.rank
    lo = [min(m[c] for m in s.monomials) for c in range(dim)]
    hi = [max(m[c] for m in s.monomials) for c in range(dim)]
    rows = []
    for c in range(dim):
        e = [0] * dim
        e[c] = 1
        rows.append((e, -lo[c]))
        rows.append(([-x for x in e], hi[c]))
    if dim == 4:
        try:
            hull = LatticePolytope(s.monomials)
        except NotFullDimensional:
            hull = None
        if hull is not None and hull.origin_interior:
            rows.extend((list(a), c) for a, c in hull.facets)
    a = np.array([r[0] for r in rows], dtype=np.int64)
    c = np.array([r[1] for r in rows], dtype=np.int64)
    return a, c


def _powers(s: Support, j_max: int):
    """Sparse ``S^j`` for ``j = 0..j_max``, keeping only terms that can still matter.

    A term ``e`` of ``S^j`` (or any descendant up to ``S^j_max``) is only ever
    paired with ``-e`` in a power of at most ``2 j_max - j + 1`` factors, so it
    is dropped once ``-e`` leaves that dilate of the support hull.
    """
    dim = s.rank
    bound = max(1, j_max * max(abs(x) for m in s.monomials for x in m))
    codec = _Codec(dim, bound)
    if codec.radix ** dim >= 2 ** 62:
        raise OverflowError("exponent range too large for packed keys")
    shifts = [codec.shift(m) for m in s.monomials]
    ha, hc = _pruning_halfspaces(s)
    out = [{codec.zero: 1}]
    cur = out[0]
    for j in range(1, j_max + 1):
        nxt: dict[int, int] = {}
        get = nxt.get
        for key, c in cur.items():
            for d in shifts:
                k2 = key + d
                nxt[k2] = get(k2, 0) + c
        keys = np.fromiter(nxt.keys(), dtype=np.int64, count=len(nxt))
        e = codec.decode_many(keys)
        # -e must lie in (2 j_max - j + 1) * hull
        ok = np.all((-e) @ ha.T + (2 * j_max - j + 1) * hc >= 0, axis=1)
        if not ok.all():
            nxt = {k: nxt[k] for k in keys[ok].tolist()}
        out.append(nxt)
        cur = nxt
    return out, codec


def constant_terms(s: Support, order: int) -> list[int]:
    """``CT(S^k)`` for ``k = 0..order`` in one sweep.

    Uses ``CT(S^(a+b)) = sum_e [S^a]_e [S^b]_(-e)`` with ``a, b`` about ``k/2``,
    so powers are only built up to ``ceil(order / 2)``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    half = (order + 1) // 2
    pows, codec = _powers(s, half)
    out = []
    for k in range(order + 1):
        a, b = (k + 1) // 2, k // 2
        pa, pb = pows[a], pows[b]
        if len(pa) > len(pb):
            pa, pb = pb, pa
        total = 0
        for key, c in pa.items():
            other = pb.get(codec.negate(key))
            if other:
                total += c * other
        out.append(total)
    return out


def constant_term_power(s: Support, k: int) -> int:
    """Constant term of ``(sum_{m in s} t^m)^k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return constant_terms(s, k)[k]


def principal_period(s: Support, order: int) -> RationalSeries:
    return RationalSeries(constant_terms(s, order))


def support_from_polytope(p: LatticePolytope) -> Support:
    if not is_reflexive(p):
        raise NotReflexive("period supports come from reflexive polytopes")
    return Support(p.vertices)


def period_step(series: RationalSeries) -> int:
    """gcd of the degrees carrying nonzero coefficients (0 if only the constant)."""
    g = 0
    for k, c in enumerate(series.coefficients):
        if k and c:
            g = gcd(g, k)
    return g


def compress(series: RationalSeries, step: int | None = None) -> tuple[RationalSeries, int]:
    """Rewrite a series supported on multiples of ``step`` in the variable ``z^step``.

    Returns the compressed series and the step used.
    """
    if step is None:
        step = period_step(series) or 1
    coeffs = series.coefficients
    if any(c for k, c in enumerate(coeffs) if k % step):
        raise ValueError(f"series has terms in degrees not divisible by {step}")
    return RationalSeries(coeffs[::step]), step
