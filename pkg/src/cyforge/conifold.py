"""Conifold combinatorics of reflexive pairs.

Given a reflexive polytope ``delta`` (the Newton polytope side), the 2-faces of
its polar dual decide whether the generic hypersurface has at most conifold
singularities. Edges of ``delta`` dual to minimal parallelograms carry the
nodes; their parallelogram relations form the matrix whose rank controls both
smoothability and the Hodge numbers after the transition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from functools import reduce

from .errors import NotAdmissible, NotSmoothable, WrongDimension
from .lattice import rank_exact
from .polytope import FacePair, LatticePolytope, face_lattice, polar_dual


class FaceTag(str, Enum):
    UNIMODULAR_TRIANGLE = "UnimodularTriangle"
    MINIMAL_PARALLELOGRAM = "MinimalParallelogram"
    OTHER = "Other"


@dataclass(frozen=True)
class TwoFaceClass:
    tag: FaceTag
    # ((i, j), (s, r)) with v_i + v_j = v_s + v_r, indices into the face's vertices
    diagonals: tuple[tuple[int, int], tuple[int, int]] | None = None


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def triangle_area(a, b, c) -> int:
    """Normalized area of a lattice triangle in its own 2-plane lattice.

    Equals the gcd of the 2x2 minors of the two edge vectors; 1 means unimodular.
    """
    u, w = _sub(b, a), _sub(c, a)
    n = len(u)
    minors = [u[i] * w[j] - u[j] * w[i] for i in range(n) for j in range(i + 1, n)]
    return reduce(gcd, minors, 0)


def classify_polygon(vertices) -> TwoFaceClass:
    """Classify a lattice polygon given by its vertices (any embedding dimension)."""
    vs = [tuple(v) for v in vertices]
    if len(vs) == 3:
        if triangle_area(*vs) == 1:
            return TwoFaceClass(FaceTag.UNIMODULAR_TRIANGLE)
        return TwoFaceClass(FaceTag.OTHER)
    if len(vs) == 4:
        pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        found = []
        for (i, j), (s, r) in pairings:
            if all(x + y == p + q for x, y, p, q in zip(vs[i], vs[j], vs[s], vs[r])):
                found.append(((i, j), (s, r)))
        if len(found) == 1:
            (i, j), (s, r) = found[0]
            # half of the parallelogram cut along the (s, r) diagonal
            if triangle_area(vs[s], vs[r], vs[i]) == 1:
                return TwoFaceClass(FaceTag.MINIMAL_PARALLELOGRAM, found[0])
    return TwoFaceClass(FaceTag.OTHER)


def classify_two_face(face: FacePair) -> TwoFaceClass:
    """Classify a 2-face; diagonal indices refer to the polytope's vertex indices."""
    if face.dim != 2:
        raise WrongDimension(f"expected a 2-face, got dimension {face.dim}")
    cls = classify_polygon(face.vertices)
    if cls.diagonals is None:
        return cls
    if len(face.lattice_points) != 4:
        return TwoFaceClass(FaceTag.OTHER)
    idx = face.vertex_indices
    d1, d2 = (tuple(sorted((idx[a], idx[b]))) for a, b in cls.diagonals)
    return TwoFaceClass(cls.tag, tuple(sorted((d1, d2))))


def admissibility(delta_dual: LatticePolytope) -> bool:
    """True iff every 2-face is a unimodular triangle or a minimal parallelogram."""
    for face in face_lattice(delta_dual):
        if face.dim == 2 and classify_two_face(face).tag == FaceTag.OTHER:
            return False
    return True


@dataclass(frozen=True)
class ConifoldEdge:
    edge: tuple[int, ...]          # vertex indices in delta
    dual_face: tuple[int, ...]     # vertex indices in the polar dual
    k_theta: int
    rho: tuple[int, ...]
    diagonals: tuple[tuple[int, int], tuple[int, int]]


def conifold_edges(delta: LatticePolytope, delta_dual: LatticePolytope | None = None) -> list[ConifoldEdge]:
    """Edges of ``delta`` whose dual 2-face is a minimal parallelogram.

    The relation row is +1 on the lexicographically smaller diagonal and -1 on
    the other one.
    """
    if delta_dual is None:
        delta_dual = polar_dual(delta)
    dual_faces = {f.vertex_indices: f for f in face_lattice(delta_dual) if f.dim == 2}
    classes = {k: classify_two_face(f) for k, f in dual_faces.items()}
    bad = [k for k, c in classes.items() if c.tag == FaceTag.OTHER]
    if bad:
        raise NotAdmissible(f"{len(bad)} two-face(s) of the dual are neither unimodular triangles nor minimal parallelograms")
    nverts = len(delta_dual.vertices)
    out = []
    for face in face_lattice(delta):
        if face.dim != 1:
            continue
        cls = classes[face.dual_vertex_indices]
        if cls.tag != FaceTag.MINIMAL_PARALLELOGRAM:
            continue
        (i, j), (s, r) = cls.diagonals
        rho = [0] * nverts
        rho[i] += 1
        rho[j] += 1
        rho[s] -= 1
        rho[r] -= 1
        out.append(
            ConifoldEdge(
                edge=face.vertex_indices,
                dual_face=face.dual_vertex_indices,
                k_theta=len(face.lattice_points) - 1,
                rho=tuple(rho),
                diagonals=cls.diagonals,
            )
        )
    return out


def smoothing_criterion(lam, k_thetas) -> bool:
    """Removing any row with k_theta = 1 must not lower the rank."""
    if not lam:
        return True
    full = rank_exact(lam)
    for idx, k in enumerate(k_thetas):
        if k != 1:
            continue
        rest = lam[:idx] + lam[idx + 1:]
        if (rank_exact(rest) if rest else 0) < full:
            return False
    return True


def _hodge_term(poly_faces: list[FacePair], dual_interior: dict[tuple[int, ...], int], npoints: int) -> int:
    h = npoints - 5
    for f in poly_faces:
        if f.dim == 3:
            h -= f.interior_count
        elif f.dim == 2:
            h += f.interior_count * dual_interior[f.dual_vertex_indices]
    return h


def hodge_resolved(delta: LatticePolytope, delta_dual: LatticePolytope | None = None) -> tuple[int, int]:
    """(h11, h21) of the MPPC-resolved hypersurface with Newton polytope ``delta``."""
    if delta_dual is None:
        delta_dual = polar_dual(delta)
    faces = face_lattice(delta)
    dual_faces = face_lattice(delta_dual)
    interior = {f.vertex_indices: f.interior_count for f in faces}
    dual_interior = {f.vertex_indices: f.interior_count for f in dual_faces}
    h11 = _hodge_term(dual_faces, interior, len(delta_dual.points))
    h21 = _hodge_term(faces, dual_interior, len(delta.points))
    return h11, h21


@dataclass(frozen=True)
class HodgeData:
    h11_resolved: int
    h21_resolved: int
    h11_smoothed: int
    h21_smoothed: int


def hodge_smoothed(resolved: tuple[int, int], rk: int, dp: int, smoothable: bool = True) -> tuple[int, int]:
    if not smoothable:
        raise NotSmoothable("the nodal hypersurface admits no flat smoothing")
    h11, h21 = resolved
    return h11 - rk, h21 + dp - rk


@dataclass
class ConifoldReport:
    admissible: bool
    edges: list[ConifoldEdge] = field(default_factory=list)
    lam: list[list[int]] = field(default_factory=list)
    rk: int = 0
    dp: int = 0
    smoothable: bool = False

    @property
    def p(self) -> int:
        return len(self.edges)


def conifold_report(delta: LatticePolytope, delta_dual: LatticePolytope | None = None) -> ConifoldReport:
    if delta_dual is None:
        delta_dual = polar_dual(delta)
    if not admissibility(delta_dual):
        return ConifoldReport(admissible=False)
    edges = conifold_edges(delta, delta_dual)
    lam = [list(e.rho) for e in edges]
    rk = rank_exact(lam) if lam else 0
    return ConifoldReport(
        admissible=True,
        edges=edges,
        lam=lam,
        rk=rk,
        dp=sum(e.k_theta for e in edges),
        smoothable=smoothing_criterion(lam, [e.k_theta for e in edges]),
    )


def hodge_data(delta: LatticePolytope, report: ConifoldReport, delta_dual: LatticePolytope | None = None) -> HodgeData:
    res = hodge_resolved(delta, delta_dual)
    sm = hodge_smoothed(res, report.rk, report.dp, report.smoothable)
    return HodgeData(res[0], res[1], sm[0], sm[1])
