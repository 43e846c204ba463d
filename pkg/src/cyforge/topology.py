"""Intersection numbers and Wall invariants of the smoothed threefold."""

from __future__ import annotations

from dataclasses import dataclass

from .conifold import HodgeData
from .errors import NonIntegralInvariant, NotReflexive
from .polytope import LatticePolytope, is_reflexive, normalized_volume, vertex_sublattice_index


@dataclass(frozen=True)
class TopologyData:
    h_cubed: int
    c2_h: int
    c3: int
    ind: int
    multiplicity: int = 1


def intersection_numbers(delta: LatticePolytope, multiplicity: int = 1) -> tuple[int, int]:
    """``(H^3, c_2 . H)`` for the hyperplane class ``H = -K / (m * Ind)``.

    ``H^3 = Vol / (m Ind)^3`` and, by Riemann-Roch for the anticanonical
    hypersurface, ``c_2 . H = (12 |boundary points| - 2 Vol) / (m Ind)``.
    """
    if not is_reflexive(delta):
        raise NotReflexive("intersection numbers need a reflexive polytope")
    if multiplicity < 1:
        raise ValueError("multiplicity must be positive")
    vol = normalized_volume(delta)
    scale = multiplicity * vertex_sublattice_index(delta)
    boundary = len(delta.points) - 1
    c2_num = 12 * boundary - 2 * vol
    if vol % scale ** 3 or c2_num % scale:
        raise NonIntegralInvariant(
            f"Vol = {vol}, 12|dDelta| - 2Vol = {c2_num} not divisible by (m*Ind)^3, m*Ind = {scale}"
        )
    return vol // scale ** 3, c2_num // scale


def euler_c3(h11: int, h21: int) -> int:
    return 2 * (h11 - h21)


def topology_data(delta: LatticePolytope, hodge: HodgeData, multiplicity: int = 1) -> TopologyData:
    h3, c2h = intersection_numbers(delta, multiplicity)
    return TopologyData(
        h_cubed=h3,
        c2_h=c2h,
        c3=euler_c3(hodge.h11_smoothed, hodge.h21_smoothed),
        ind=vertex_sublattice_index(delta),
        multiplicity=multiplicity,
    )


def wall_key(t: TopologyData, h: HodgeData) -> tuple[int, int, int, int]:
    """Grouping key ``(h11, h21, H^3, c_2.H)``; equal keys mean equal diffeomorphism type."""
    if h.h11_smoothed != 1:
        raise ValueError("wall_key is only defined for Picard number one")
    return (h.h11_smoothed, h.h21_smoothed, t.h_cubed, t.c2_h)
