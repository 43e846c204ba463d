"""Lattice polytopes in dimension 4: hull, polar duality, faces, points, volume.

Facets are stored as pairs ``(a, c)`` with ``a`` a primitive integer normal
and the polytope equal to ``{x : <a, x> + c >= 0}``. When the origin is
interior every ``c`` is positive and ``a / c`` is a vertex of the polar dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NonIntegralDual,
    NotFullDimensional,
    NotReflexive,
    OriginNotInterior,
)
from .lattice import determinant, rank_exact, smith_diagonal

DIM = 4

Point = tuple[int, ...]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def _primitive(v) -> Point:
    g = reduce(gcd, v, 0)
    return tuple(x // g for x in v) if g else tuple(v)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    return rank_exact(diffs) if diffs else 0


def _normal(pts: Sequence[Point]) -> Point:
    """Primitive normal of the hyperplane through 4 affinely independent points."""
    d = [_sub(p, pts[0]) for p in pts[1:]]
    n = []
    for k in range(DIM):
        minor = [[row[j] for j in range(DIM) if j != k] for row in d]
        n.append((-1) ** k * determinant(minor))
    return _primitive(n)


def _independent_subset(points: Sequence[Point], size: int) -> list[Point] | None:
    """Greedily pick ``size`` affinely independent points."""
    chosen: list[Point] = []
    for p in points:
        if affine_rank(chosen + [p]) == len(chosen):
            chosen.append(p)
            if len(chosen) == size:
                return chosen
    return None


def convex_hull_facets(points: Iterable[Point]) -> list[tuple[Point, int]]:
    """Exact facet description of the convex hull of integer points in Z^4.

    Beneath-beyond insertion: each new point removes the facets it sees and
    adds facets spanned by itself and the horizon ridges.
    """
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if any(len(p) != DIM for p in pts):
        raise NotFullDimensional("points must have exactly 4 coordinates")
    simplex = _independent_subset(pts, DIM + 1)
    if simplex is None:
        raise NotFullDimensional("points do not span a 4-dimensional polytope")
    # 5 * centroid of the initial simplex, used to orient normals
    inner = tuple(sum(p[k] for p in simplex) for k in range(DIM))

    def oriented(ridge_pts: Sequence[Point]) -> tuple[Point, int]:
        a = _normal(ridge_pts)
        c = -_dot(a, ridge_pts[0])
        if _dot(a, inner) + (DIM + 1) * c < 0:
            a, c = tuple(-x for x in a), -c
        return a, c

    facets: dict[tuple[Point, int], set[Point]] = {}
    for omit in range(DIM + 1):
        face = [p for i, p in enumerate(simplex) if i != omit]
        facets[oriented(face)] = set(face)

    seen = set(simplex)
    for p in pts:
        if p in seen:
            continue
        seen.add(p)
        visible = [f for f in facets if _dot(f[0], p) + f[1] < 0]
        if not visible:
            for f, inc in facets.items():
                if _dot(f[0], p) + f[1] == 0:
                    inc.add(p)
            continue
        hidden = [f for f in facets if f not in visible]
        new: dict[tuple[Point, int], set[Point]] = {}
        for fv in visible:
            for fh in hidden:
                ridge = facets[fv] & facets[fh]
                if len(ridge) < DIM - 1:
                    continue
                ridge_pts = sorted(ridge)
                if affine_rank(ridge_pts) != DIM - 2:
                    continue
                base = _independent_subset(ridge_pts, DIM - 1)
                key = oriented(base + [p])
                new.setdefault(key, set()).update(ridge)
        for f in visible:
            del facets[f]
        for f, inc in facets.items():
            if _dot(f[0], p) + f[1] == 0:
                inc.add(p)
        for key, inc in new.items():
            inc.add(p)
            if key in facets:
                facets[key] |= inc
            else:
                facets[key] = inc
    # incidence sets only saw inserted points; recompute over all points
    return [(a, c) for (a, c) in facets]


def _facet_sort_key(f: tuple[Point, int]):
    a, c = f
    if c > 0:
        return (0, tuple(Fraction(x, c) for x in a))
    return (1, a, c)


class LatticePolytope:
    """Full-dimensional lattice polytope in Z^4 given by its vertices.

    Input points are deduplicated and reduced to extreme points; vertices are
    stored in lexicographic order. Facets are ordered by their polar-dual
    vertex, so facet ``i`` corresponds to vertex ``i`` of ``polar_dual(self)``.
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        if not pts or any(len(p) != DIM for p in pts):
            raise NotFullDimensional("expected a nonempty list of 4-dimensional points")
        facets = convex_hull_facets(pts)
        verts = []
        for p in pts:
            normals = [a for a, c in facets if _dot(a, p) + c == 0]
            if len(normals) >= DIM and rank_exact(normals) == DIM:
                verts.append(p)
        self.vertices: tuple[Point, ...] = tuple(verts)
        self.facets: tuple[tuple[Point, int], ...] = tuple(sorted(facets, key=_facet_sort_key))

    def __repr__(self):
        return f"LatticePolytope({[list(v) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def origin_interior(self) -> bool:
        return all(c > 0 for _, c in self.facets)

    def facet_vertices(self, i: int) -> frozenset[int]:
        a, c = self.facets[i]
        return frozenset(j for j, v in enumerate(self.vertices) if _dot(a, v) + c == 0)

    @cached_property
    def points(self) -> tuple[Point, ...]:
        """All lattice points, in lexicographic order."""
        v = np.array(self.vertices, dtype=np.int64)
        lo, hi = v.min(axis=0), v.max(axis=0)
        grids = np.meshgrid(*[np.arange(l, h + 1) for l, h in zip(lo, hi)], indexing="ij")
        cand = np.stack([g.ravel() for g in grids], axis=1)
        a = np.array([f[0] for f in self.facets], dtype=np.int64)
        c = np.array([f[1] for f in self.facets], dtype=np.int64)
        keep = np.all(cand @ a.T + c >= 0, axis=1)
        return tuple(tuple(int(x) for x in row) for row in cand[keep])

    @cached_property
    def saturation(self) -> dict[Point, frozenset[int]]:
        """For each lattice point, the indices of facets it lies on."""
        out = {}
        for p in self.points:
            out[p] = frozenset(i for i, (a, c) in enumerate(self.facets) if _dot(a, p) + c == 0)
        return out

    @cached_property
    def faces(self) -> dict[frozenset[int], frozenset[int]]:
        """Map from each proper face (vertex-index set) to its facet-index set."""
        facet_sets = [self.facet_vertices(i) for i in range(len(self.facets))]
        faces = set(facet_sets)
        frontier = set(facet_sets)
        while frontier:
            nxt = set()
            for f in frontier:
                for g in facet_sets:
                    h = f & g
                    if h and h not in faces:
                        nxt.add(h)
            faces |= nxt
            frontier = nxt
        out = {}
        for f in faces:
            out[f] = frozenset(i for i, g in enumerate(facet_sets) if f <= g)
        return out

    def face_dim(self, face: frozenset[int]) -> int:
        return affine_rank([self.vertices[i] for i in sorted(face)])

    @cached_property
    def face_dims(self) -> dict[frozenset[int], int]:
        return {f: self.face_dim(f) for f in self.faces}


@dataclass(frozen=True)
class FacePair:
    dim: int
    vertex_indices: tuple[int, ...]
    dual_vertex_indices: tuple[int, ...]
    vertices: tuple[Point, ...]
    lattice_points: tuple[Point, ...]
    interior_count: int

    @property
    def dual_dim(self) -> int:
        return 3 - self.dim


def polar_dual(p: LatticePolytope) -> LatticePolytope:
    """Polar polytope ``{y : <y, x> >= -1 for x in p}``; must be a lattice polytope."""
    if not p.origin_interior:
        raise OriginNotInterior("origin is not an interior point")
    verts = []
    for a, c in p.facets:
        if any(x % c for x in a):
            raise NonIntegralDual(f"dual vertex {[Fraction(x, c) for x in a]} is not integral")
        verts.append(tuple(x // c for x in a))
    return LatticePolytope(verts)


def is_reflexive(p: LatticePolytope) -> bool:
    return p.origin_interior and all(c == 1 for _, c in p.facets)


def lattice_points(p: LatticePolytope) -> list[Point]:
    return list(p.points)


def face_lattice(delta: LatticePolytope) -> list[FacePair]:
    """All proper faces of a reflexive polytope paired with their dual faces.

    Dual vertex indices refer to ``polar_dual(delta).vertices``.
    """
    if not is_reflexive(delta):
        raise NotReflexive("face_lattice requires a reflexive polytope")
    by_facets: dict[frozenset[int], int] = {}
    for s in delta.saturation.values():
        by_facets[s] = by_facets.get(s, 0) + 1
    out = []
    for face, fac in delta.faces.items():
        pts = tuple(q for q, s in delta.saturation.items() if fac <= s)
        out.append(
            FacePair(
                dim=delta.face_dims[face],
                vertex_indices=tuple(sorted(face)),
                dual_vertex_indices=tuple(sorted(fac)),
                vertices=tuple(delta.vertices[i] for i in sorted(face)),
                lattice_points=pts,
                interior_count=by_facets.get(fac, 0),
            )
        )
    out.sort(key=lambda f: (f.dim, f.vertex_indices))
    return out


def facet_has_interior_point(p: LatticePolytope) -> bool:
    """True if some facet carries a lattice point in its relative interior."""
    singles = {frozenset([i]) for i in range(len(p.facets))}
    return any(s in singles for s in p.saturation.values())


def _pulling_triangulation(p: LatticePolytope, face: frozenset[int], key) -> list[tuple[int, ...]]:
    dim = p.face_dims[face]
    if dim == 0:
        return [tuple(face)]
    apex = min(face, key=key)
    out = []
    for sub, d in p.face_dims.items():
        if d == dim - 1 and sub < face and apex not in sub:
            for s in _pulling_triangulation(p, sub, key):
                out.append((apex,) + s)
    return out


def boundary_triangulation(p: LatticePolytope, order: str = "lex") -> list[tuple[int, ...]]:
    """Triangulate the boundary facet by facet by pulling vertices in the given order."""
    if order == "lex":
        key = lambda i: i  # noqa: E731
    elif order == "reverse":
        key = lambda i: -i  # noqa: E731
    else:
        raise ValueError(f"unknown order {order!r}")
    simplices = []
    for i in range(len(p.facets)):
        simplices.extend(_pulling_triangulation(p, p.facet_vertices(i), key))
    return simplices


def normalized_volume(p: LatticePolytope, order: str = "lex") -> int:
    """Lattice volume, 4! times the Euclidean volume, by coning the boundary at 0."""
    if not p.origin_interior:
        raise OriginNotInterior("normalized_volume cones over the origin, which must be interior")
    total = 0
    for s in boundary_triangulation(p, order):
        total += abs(determinant([list(p.vertices[i]) for i in s]))
    return total


def affine_lattice_index(p: LatticePolytope) -> int:
    """Index in Z^4 of the lattice spanned by vertex differences (product of the Smith diagonal)."""
    out = 1
    for d in _difference_smith(p):
        out *= d
    return out


def vertex_sublattice_index(p: LatticePolytope) -> int:
    """Largest ``k`` with all vertex differences in ``k Z^4``.

    This is the first Smith invariant of the difference matrix: the polytope is
    a translate of ``k`` times a lattice polytope, so ``-K`` is divisible by ``k``.
    """
    return _difference_smith(p)[0]


def _difference_smith(p: LatticePolytope) -> list[int]:
    v0 = p.vertices[0]
    diffs = [list(_sub(v, v0)) for v in p.vertices[1:]]
    diag = smith_diagonal(diffs)
    if len(diag) < DIM or 0 in diag:
        raise NotFullDimensional("vertices do not affinely span a 4-dimensional lattice")
    return diag
