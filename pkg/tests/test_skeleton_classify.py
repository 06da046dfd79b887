"""Skeleton orbits, vertex links, boundary surfaces, and classification."""

import random

import pytest

from tritop import Triangulation, classify, compute_skeleton, edge_fan, vertex_link
from tritop.constructions import (
    figure_eight_complement,
    lens_3_1,
    one_tet_ball,
    projective_space,
    sphere_bundle,
    three_sphere,
)
from tritop.perm4 import EDGES, EDGE_INDEX
from tritop.skeleton import LINK_DISC, LINK_SPHERE, LINK_TORUS

from .oracles import (
    edge_orbits_naive,
    face_orbits_naive,
    random_triangulation,
    vertex_orbits_naive,
)

# A closed valid non-orientable two-tetrahedron triangulation (the twisted
# sphere bundle over the circle), found by exhaustive search.
NONORIENTABLE_TEXT = """tets 2
1(201) 1(130) 1(032) 1(132)
0(120) 0(301) 0(032) 0(132)
"""


def test_projective_space_skeleton():
    sk = projective_space().skeleton()
    assert sk.f_vector == (2, 4, 4, 2)
    assert sk.valid and sk.closed and sk.orientable and sk.connected
    assert not sk.ideal and not sk.has_boundary_faces
    assert all(v.link.link_class == LINK_SPHERE for v in sk.vertices)
    assert sum(e.degree for e in sk.edges) == 12


def test_one_tet_sphere_skeleton():
    sk = three_sphere().skeleton()
    assert sk.f_vector == (2, 3, 2, 1)
    assert sk.valid and sk.closed and sk.orientable


def test_closed_valid_euler_characteristic_vanishes():
    for tri in (three_sphere(), projective_space(), sphere_bundle(), lens_3_1()):
        v, e, f, t = tri.skeleton().f_vector
        assert v - e + f - t == 0


def test_ball_boundary_component():
    sk = one_tet_ball().skeleton()
    assert sk.valid and not sk.closed
    assert len(sk.boundary_components) == 1
    comp = sk.boundary_components[0]
    assert comp.euler == 2 and comp.orientable
    assert len(comp.face_slots) == 4
    assert all(v.link.link_class == LINK_DISC for v in sk.vertices)


def test_figure_eight_complement_is_ideal():
    tri = figure_eight_complement()
    sk = tri.skeleton()
    assert sk.valid and sk.orientable and not sk.has_boundary_faces
    assert not sk.closed and sk.ideal
    assert len(sk.vertices) == 1
    assert sk.vertices[0].link.link_class == LINK_TORUS
    assert sorted(e.degree for e in sk.edges) == [6, 6]
    c = classify(tri)
    assert c.ideal and c.valid and c.orientable and not c.closed


def test_nonorientable_detection():
    tri = Triangulation.from_text(NONORIENTABLE_TEXT)
    sk = tri.skeleton()
    assert sk.valid and sk.closed
    assert not sk.orientable


def test_reversed_edge_is_invalid():
    # Fold face 012 onto face 013 exchanging vertices 0 and 1: the edge 01
    # is identified with itself in reverse.
    tri = Triangulation.from_gluings(1, [(0, 3, 0, (1, 0, 3, 2))])
    sk = tri.skeleton()
    assert not sk.valid
    assert any(e.reversed_identification for e in sk.edges)


def test_vertex_link_accessor():
    tri = projective_space()
    info = vertex_link(tri, 0)
    assert info.link_class == LINK_SPHERE
    assert info.euler == 2
    with pytest.raises(ValueError):
        vertex_link(tri, 99)


def test_orbit_partitions_match_naive_oracle():
    rng = random.Random(23)
    for _ in range(60):
        tri = random_triangulation(rng, rng.randint(1, 5))
        sk = compute_skeleton(tri)

        got_v = {
            frozenset(vc.slots) for vc in sk.vertices
        }
        assert got_v == set(vertex_orbits_naive(tri))

        got_f = {frozenset(fc.slots) for fc in sk.faces}
        assert got_f == set(face_orbits_naive(tri))

        oracle_edges, oracle_flags = edge_orbits_naive(tri)
        got_e = {frozenset(ec.slots): ec.reversed_identification for ec in sk.edges}
        assert got_e == dict(zip(oracle_edges, oracle_flags))


def test_edge_degrees_sum_to_six_per_tetrahedron():
    rng = random.Random(5)
    for _ in range(30):
        tri = random_triangulation(rng, rng.randint(1, 5))
        sk = tri.skeleton()
        assert sum(e.degree for e in sk.edges) == 6 * tri.size
        assert sum(len(v.slots) for v in sk.vertices) == 4 * tri.size


def test_edge_fans_cover_each_orbit():
    fixtures = [
        three_sphere(),
        projective_space(),
        sphere_bundle(),
        lens_3_1(),
        figure_eight_complement(),
        one_tet_ball(),
        Triangulation.from_gluings(2, [(0, 0, 1, (0, 1, 2, 3))]),
    ]
    for tri in fixtures:
        sk = tri.skeleton()
        for ec in sk.edges:
            t0, e0 = ec.slots[0]
            frames, closed = edge_fan(tri, t0, e0)
            assert closed == (not ec.boundary)
            assert len(frames) == ec.degree
            # Every frame stays on the same edge orbit and is a frame of it.
            for t, phi in frames:
                e = EDGE_INDEX[phi[0]][phi[1]]
                assert sk.edge_index[t][e] == ec.index
                assert {phi[2], phi[3]} == set(range(4)) - set(EDGES[e])
            # Consecutive frames are glued through the exit face.
            for i in range(len(frames) - 1):
                t, phi = frames[i]
                g = tri.adjacent(t, phi[2])
                assert g is not None and g[0] == frames[i + 1][0]
            if closed:
                t, phi = frames[-1]
                assert tri.adjacent(t, phi[2]) is not None
            else:
                tfirst, pfirst = frames[0]
                tlast, plast = frames[-1]
                assert tri.adjacent(tfirst, pfirst[3]) is None
                assert tri.adjacent(tlast, plast[2]) is None


def test_boundary_components_of_two_tet_wedge():
    # Two tetrahedra sharing one face: boundary is a 6-face sphere.
    tri = Triangulation.from_gluings(2, [(0, 0, 1, (0, 1, 2, 3))])
    sk = tri.skeleton()
    assert len(sk.boundary_components) == 1
    assert sk.boundary_components[0].euler == 2
    assert sk.boundary_components[0].orientable
    assert len(sk.boundary_components[0].face_slots) == 6


def test_classification_flags_disconnected():
    tri = Triangulation(2)  # two separate balls
    c = classify(tri)
    assert not c.connected
    assert c.valid and not c.closed
    sk = tri.skeleton()
    assert len(sk.boundary_components) == 2
