import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SUPPORTS, dual_side, newton_side, read_polytope
from cyforge.errors import NotFullDimensional
from cyforge.polytope import (
    LatticePolytope,
    affine_lattice_index,
    face_lattice,
    facet_has_interior_point,
    is_reflexive,
    lattice_points,
    normalized_volume,
    polar_dual,
    vertex_sublattice_index,
)

SIMPLEX = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)]


def cross():
    pts = []
    for i in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[i] = s
            pts.append(tuple(v))
    return LatticePolytope(pts)


def test_simplex_counts():
    p = LatticePolytope(SIMPLEX)
    d = polar_dual(p)
    assert len(lattice_points(p)) == 6
    assert len(lattice_points(d)) == 126
    assert is_reflexive(p) and is_reflexive(d)
    assert normalized_volume(d) == 625
    assert vertex_sublattice_index(d) == 5


def test_interior_points_are_ignored_as_vertices():
    p = LatticePolytope(SIMPLEX + [(0, 0, 0, 0), (1, 0, 0, 0)])
    assert len(p.vertices) == 5


def test_flat_point_set_rejected():
    with pytest.raises(NotFullDimensional):
        LatticePolytope([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])


def test_non_reflexive_detected():
    p = LatticePolytope([(2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)])
    assert not is_reflexive(p)


def test_cross_polytope_is_dual_to_cube():
    d = polar_dual(cross())
    assert sorted(d.vertices) == sorted(itertools.product((1, -1), repeat=4))
    assert len(lattice_points(d)) == 81
    assert normalized_volume(d) == 16 * 24


@pytest.mark.parametrize("name", SUPPORTS)
def test_double_dual_is_identity(name):
    p = dual_side(name)
    assert polar_dual(polar_dual(p)).vertices == p.vertices
    assert is_reflexive(p)


@pytest.mark.parametrize("name", SUPPORTS + ["x65"])
def test_shipped_newton_files_match(name):
    p = read_polytope(name)
    assert is_reflexive(p)
    if name != "x65":
        assert p.vertices == newton_side(name).vertices


def euler_counts(p):
    counts = [0] * 5
    counts[4] = 1
    for f in face_lattice(p):
        counts[f.dim] += 1
    return counts


@pytest.mark.parametrize("name", SUPPORTS + ["x65"])
def test_euler_relation(name):
    for p in (read_polytope(name), polar_dual(read_polytope(name))):
        f = euler_counts(p)
        assert f[0] - f[1] + f[2] - f[3] == 0
        assert f[0] == len(p.vertices) and f[3] == len(p.facets)


@pytest.mark.parametrize("name", SUPPORTS)
def test_face_duality_dimensions(name):
    d = newton_side(name)
    faces = face_lattice(d)
    dual = {f.vertex_indices: f for f in face_lattice(polar_dual(d))}
    for f in faces:
        g = dual[f.dual_vertex_indices]
        assert f.dim + g.dim == 3
        assert g.dual_vertex_indices == f.vertex_indices


@pytest.mark.parametrize("name", SUPPORTS + ["x65"])
def test_volume_triangulation_independent(name):
    p = read_polytope(name)
    assert normalized_volume(p, "lex") == normalized_volume(p, "reverse")


def test_index_conventions():
    p = read_polytope("x65")
    assert vertex_sublattice_index(p) == 2
    assert affine_lattice_index(p) == 2 * 4 * 4 * 4
    assert facet_has_interior_point(p)
    assert not facet_has_interior_point(read_polytope("x44a"))


def random_gl4(rng):
    u = [[int(i == j) for j in range(4)] for i in range(4)]
    for _ in range(10):
        i, j = rng.sample(range(4), 2)
        k = rng.choice([-1, 1])
        for c in range(4):
            u[i][c] += k * u[j][c]
    return u


def apply(u, pts):
    return [tuple(sum(u[i][j] * v[j] for j in range(4)) for i in range(4)) for v in pts]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(SUPPORTS), st.integers(0, 10**6))
def test_invariants_under_gl4(name, seed):
    p = dual_side(name)
    q = LatticePolytope(apply(random_gl4(random.Random(seed)), p.vertices))
    assert len(lattice_points(q)) == len(lattice_points(p))
    assert len(lattice_points(polar_dual(q))) == len(lattice_points(polar_dual(p)))
    assert normalized_volume(polar_dual(q)) == normalized_volume(polar_dual(p))
    assert euler_counts(q) == euler_counts(p)
