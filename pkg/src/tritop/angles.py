"""Angle structures on ideal triangulations.

An angle structure assigns one dihedral angle to each pair of opposite
edges of each tetrahedron (the same angle on both edges of the pair),
subject to three conditions: every angle is non-negative, the six angles
of each tetrahedron sum to 2*pi, and the angles around each edge orbit
sum to 2*pi.  Zero angles are permitted throughout.

All arithmetic is exact: angles are stored as rational multiples of pi,
so the three values of a tetrahedron sum to 1 and the values around an
edge orbit sum to 2.  Appending a homogenising coordinate (the unit
"pi") turns these affine conditions into a rational cone
``{Ax = 0, x >= 0}`` in ``R^(3n+1)`` whose extreme rays, rescaled so the
last coordinate is 1, are the *vertex angle structures* -- the vertices
of the angle structure polytope.

A structure is *taut* when every angle is exactly 0 or pi.  Every taut
structure is itself a vertex angle structure, so taut enumeration runs
the same extreme-ray machinery under a support filter allowing at most
one positive angle position per tetrahedron, then keeps the
exactly-taut results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .cone import ConeProblem, enumerate_extreme_rays
from .perm4 import EDGES, PAIR_TYPE
from .skeleton import LINK_KLEIN, LINK_TORUS
from .triangulation import PreconditionError, Triangulation

__all__ = [
    "AngleVector",
    "angle_system",
    "enumerate_taut",
    "enumerate_vertex_angle_structures",
    "is_taut",
]


def angle_system(tri: Triangulation) -> ConeProblem:
    """Homogeneous cone whose extreme rays give the vertex angle structures.

    Requires a valid ideal triangulation in which every vertex link is a
    torus or a Klein bottle (no other link admits a solution, and closed
    or bounded triangulations are rejected outright).  The system has
    ``3n + 1`` columns: three angle values per tetrahedron followed by
    the homogenising coordinate.  Each tetrahedron contributes the row
    ``a + b + c - scale = 0`` and each edge orbit the row summing its
    incident angle positions minus twice the scale.
    """
    skeleton = tri.skeleton()
    if not skeleton.valid:
        raise PreconditionError("angle structures require a valid triangulation")
    if not skeleton.ideal:
        raise PreconditionError("angle structures require an ideal triangulation")
    if any(
        v.link.link_class not in (LINK_TORUS, LINK_KLEIN) for v in skeleton.vertices
    ):
        raise PreconditionError(
            "angle structures require every vertex link to be a torus or Klein bottle"
        )
    n = tri.size
    dim = 3 * n + 1
    rows = [[0] * dim for _ in range(n + len(skeleton.edges))]
    for t in range(n):
        for k in range(3):
            rows[t][3 * t + k] = 1
        rows[t][3 * n] = -1
    for t in range(n):
        for slot, (a, b) in enumerate(EDGES):
            rows[n + skeleton.edge_index[t][slot]][3 * t + PAIR_TYPE[a][b]] += 1
    for orbit in range(len(skeleton.edges)):
        rows[n + orbit][3 * n] = -2
    return ConeProblem(dim, rows)


@dataclass(frozen=True, eq=False)
class AngleVector:
    """One angle structure, stored as rational multiples of pi.

    ``angles`` lists three values per tetrahedron, one per pair of
    opposite edges, in pair-type order.  Construction validates the
    structure exactly: values non-negative, each tetrahedron summing
    to 1 and each edge orbit to 2 (both in units of pi).  The optional
    ``projective_coordinate`` records the primitive homogeneous scale
    the structure was dehomogenised from; rescaling it never changes
    which angles are 0 or pi.
    """

    triangulation: Triangulation
    angles: tuple[Fraction, ...]
    projective_coordinate: int | None = field(default=None)

    def __post_init__(self) -> None:
        angles = tuple(Fraction(a) for a in self.angles)
        object.__setattr__(self, "angles", angles)
        expected = 3 * self.triangulation.size
        if len(angles) != expected:
            raise ValueError(f"expected {expected} angle values, got {len(angles)}")
        if any(a < 0 for a in angles):
            raise ValueError("angle values must be non-negative")
        if self.projective_coordinate is not None and self.projective_coordinate <= 0:
            raise ValueError("projective coordinate must be positive")
        problem = angle_system(self.triangulation)
        vector = angles + (Fraction(1),)
        for k, row in enumerate(problem.rows):
            residual = sum(c * x for c, x in zip(row, vector))
            if residual != 0:
                raise ValueError(f"angle sum condition violated in row {k}")

    def rendered(self) -> str:
        """Three rationals per tetrahedron joined ``;``, tetrahedra ``||``."""
        groups = [
            " ; ".join(str(a) for a in self.angles[3 * t : 3 * t + 3])
            for t in range(self.triangulation.size)
        ]
        return " || ".join(groups)

    def __repr__(self) -> str:
        return f"<AngleVector {self.rendered()}>"


def is_taut(structure: AngleVector) -> bool:
    """Whether every angle of the structure is exactly 0 or pi."""
    return all(a == 0 or a == 1 for a in structure.angles)


def _structures_from_rays(tri: Triangulation, rays: Iterable) -> list[AngleVector]:
    """Dehomogenise rays with positive scale into exact angle structures."""
    out = []
    for ray in rays:
        scale = ray.vector[-1]
        if scale <= 0:
            continue
        angles = tuple(Fraction(v, scale) for v in ray.vector[:-1])
        out.append(AngleVector(tri, angles, projective_coordinate=scale))
    return out


def enumerate_vertex_angle_structures(tri: Triangulation) -> list[AngleVector]:
    """All vertices of the angle structure polytope, exactly."""
    problem = angle_system(tri)
    return _structures_from_rays(tri, enumerate_extreme_rays(problem))


def enumerate_taut(tri: Triangulation) -> list[AngleVector]:
    """All taut angle structures.

    Every taut structure is a vertex angle structure, so the filtered
    enumeration (at most one positive angle position per tetrahedron
    across any combined support) loses none of them; the survivors are
    then reduced to the exactly-taut ones.
    """
    base = angle_system(tri)
    masks = [
        sum(1 << (3 * t + k) for k in range(3)) for t in range(tri.size)
    ]

    def pair_filter(support1: int, support2: int) -> bool:
        union = support1 | support2
        for mask in masks:
            bits = union & mask
            if bits & (bits - 1):
                return False
        return True

    problem = ConeProblem(base.dimension, base.rows, pair_filter)
    structures = _structures_from_rays(tri, enumerate_extreme_rays(problem))
    return [s for s in structures if is_taut(s)]
