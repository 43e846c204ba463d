"""Mirror map, Yukawa coupling and genus-0 instanton numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegralInstanton, SingularNormalization
from .pfops import DiffOperator, FrobeniusBasis
from .series import RationalSeries


@dataclass(frozen=True)
class MirrorMap:
    q_of_z: RationalSeries
    z_of_q: RationalSeries


def mirror_map(fb: FrobeniusBasis) -> MirrorMap:
    """``q = z exp(sigma_1 / sigma_0)`` and its compositional inverse."""
    ratio = fb.sigma[1] / fb.sigma[0]
    e = ratio.exp()
    q = RationalSeries([0] + list(e.coefficients[:-1]))
    return MirrorMap(q, q.reversion())


def yukawa_z(op: DiffOperator, h_cubed: int, order: int) -> RationalSeries:
    """``W(z)`` with ``theta log W = -C_3 / (2 C_4)`` and ``W(0) = h_cubed``."""
    c4 = op.poly(4)
    if c4[0] != 1:
        raise SingularNormalization("theta^4 coefficient at z^0 must be 1")
    pad = lambda p: RationalSeries(list(p[: order + 1]) + [0] * max(0, order + 1 - len(p)))  # noqa: E731
    g = -(pad(op.poly(3)) / pad(c4)) / 2
    return g.theta_integral().exp() * h_cubed


def yukawa(op: DiffOperator, h_cubed: int, fb: FrobeniusBasis, mm: MirrorMap, order: int | None = None) -> RationalSeries:
    """Normalized coupling ``K(q) = W / (sigma_0^2 (theta t)^3)`` expanded in ``q``."""
    if order is None:
        order = fb.order
    order = min(order, fb.order, mm.z_of_q.order)
    w = yukawa_z(op, h_cubed, order)
    s0, s1 = fb.sigma[0].truncate(order), fb.sigma[1].truncate(order)
    theta_t = (s1 / s0).theta() + 1
    k_z = w / (s0 * s0 * theta_t * theta_t * theta_t)
    return k_z.compose(mm.z_of_q.truncate(order))


def instanton_numbers(k: RationalSeries, h_cubed: int, n_max: int = 7) -> list[int]:
    """Invert ``K = h_cubed + sum_d n_d d^3 q^d / (1 - q^d)`` for ``n_1..n_max``."""
    if k[0] != h_cubed:
        raise ValueError(f"K(0) = {k[0]} differs from H^3 = {h_cubed}")
    if k.order < n_max:
        raise ValueError(f"coupling known to order {k.order}, need {n_max}")
    n: dict[int, int] = {}
    for m in range(1, n_max + 1):
        rest = k[m] - sum(d ** 3 * n[d] for d in range(1, m) if m % d == 0)
        val = Fraction(rest) / m ** 3
        if val.denominator != 1:
            raise NonIntegralInstanton(f"n_{m} = {val} is not an integer")
        n[m] = int(val)
    return [n[m] for m in range(1, n_max + 1)]


def gw_pipeline(op: DiffOperator, h_cubed: int, n_max: int = 7, extra: int = 2):
    """Frobenius basis, mirror map, coupling and instanton list in one go."""
    from .pfops import frobenius

    order = n_max + extra
    fb = frobenius(op, order)
    mm = mirror_map(fb)
    k = yukawa(op, h_cubed, fb, mm, order)
    return fb, mm, k, instanton_numbers(k, h_cubed, n_max)
