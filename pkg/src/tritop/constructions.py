"""Ready-made triangulations of standard 3-manifolds.

These small gluing tables are used as building blocks (e.g. the summands
appended by the connected-sum decomposition) and as test fixtures.  Each is
verified by the test suite against its defining properties (homology,
orientability, vertex links, recognition).
"""

from __future__ import annotations

from .triangulation import Triangulation


def one_tet_ball() -> Triangulation:
    """A single unglued tetrahedron: the closed 3-ball."""
    return Triangulation(1)


def three_sphere() -> Triangulation:
    """A one-tetrahedron 3-sphere.

    Face 012 folds onto face 013 (fixing 0 and 1), and face 023 folds onto
    face 123 (fixing 2 and 3).
    """
    return Triangulation.from_gluings(
        1,
        [
            (0, 3, 0, (0, 1, 3, 2)),
            (0, 1, 0, (1, 0, 2, 3)),
        ],
    )


def projective_space() -> Triangulation:
    """The minimal two-tetrahedron real projective space RP3."""
    return Triangulation.from_gluings(
        2,
        [
            (0, 3, 1, (0, 1, 2, 3)),
            (0, 2, 1, (0, 1, 2, 3)),
            (0, 1, 1, (1, 0, 3, 2)),
            (0, 0, 1, (1, 0, 3, 2)),
        ],
    )


def sphere_bundle() -> Triangulation:
    """A two-tetrahedron S2 x S1 (orientable sphere bundle over the circle).

    Found by exhaustive search over two-tetrahedron gluings: up to
    isomorphism this is the only closed orientable two-tetrahedron
    triangulation with first homology Z, which identifies the manifold.
    """
    return Triangulation.from_text(
        """
        tets 2
        1(230) 1(231) 0(312) 0(230)
        1(301) 1(120) 0(201) 0(301)
        """
    )


def lens_3_1() -> Triangulation:
    """A two-tetrahedron lens space L(3,1).

    Found by exhaustive search over two-tetrahedron gluings: closed,
    orientable, with first homology Z_3; the only closed orientable
    3-manifold with fundamental group of order three is L(3,1).
    """
    return Triangulation.from_text(
        """
        tets 2
        1(120) 1(013) 1(023) 1(123)
        0(201) 0(013) 0(023) 0(123)
        """
    )


def figure_eight_complement() -> Triangulation:
    """The classical two-tetrahedron ideal triangulation with one cusp.

    The unique two-tetrahedron triangulation with a single torus-link
    vertex, two edges of degree six, and first homology Z.  Used as a
    fixture for angle-structure computations.
    """
    return Triangulation.from_text(
        """
        tets 2
        1(120) 1(130) 1(230) 1(231)
        0(201) 0(301) 0(302) 0(312)
        """
    )
