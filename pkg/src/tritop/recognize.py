"""Recognition and decomposition procedures built on sphere crushing.

The three decision procedures here share one engine: starting from a
simplified triangulation, repeatedly locate a non-trivial normal 2-sphere
among the quadrilateral vertex surfaces and crush it.  Crushing strictly
reduces the tetrahedron count and can only pull connected sums apart,
spawn extra 3-sphere pieces, or delete 3-sphere, RP3, S2xS1 or L(3,1)
pieces, so the loop terminates and its homology bookkeeping is exact.

A piece with no such sphere is 0-efficient.  If it is one-vertex, an
octagonal almost normal sphere among its quad-oct vertex surfaces
certifies a 3-sphere and its absence certifies a non-sphere; 0-efficient
pieces with several vertices are themselves 3-spheres and are dropped
(each drop is logged on the ``tritop.recognize`` logger for audit).

All verdicts are definite: the optional ``rng_seed`` arguments only steer
the simplification heuristics, never the answers.  Worklist pieces are
independent, and the homology totals are plain componentwise sums, so
the processing order never matters.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .homology import first_homology
from .simplify import simplify_fast
from .surfaces import crush, find_almost_normal_sphere, find_nontrivial_normal_sphere
from .triangulation import PreconditionError, Triangulation, cone_boundary

__all__ = [
    "DecompositionResult",
    "connected_sum_decomposition",
    "is_ball",
    "is_three_sphere",
    "is_zero_efficient",
]

logger = logging.getLogger("tritop.recognize")

#: Keys of ``DecompositionResult.appended_named``, in report order.
NAMED_SUMMANDS = ("S2xS1", "RP3", "L(3,1)")


@dataclass(frozen=True)
class DecompositionResult:
    """Prime pieces of a connected sum, plus homology-corrected counts.

    ``summands`` holds the surviving triangulations: each is closed,
    connected and orientable, and none of them is a 3-sphere.
    ``appended_named`` counts the extra ``S2xS1`` / ``RP3`` / ``L(3,1)``
    pieces appended so that the summed first homology of all summands
    matches the input's (crushing may silently delete copies of exactly
    these manifolds, and each leaves a unique homology fingerprint).
    """

    summands: list[Triangulation]
    appended_named: dict[str, int]


def _homology_profile(tri: Triangulation) -> tuple[int, int, int]:
    """Rank plus Z2- and Z3-ranks of the first homology group."""
    h = first_homology(tri)
    return (h.rank, h.torsion_count_divisible_by(2), h.torsion_count_divisible_by(3))


def _profile_total(pieces: list[Triangulation]) -> tuple[int, int, int]:
    total = (0, 0, 0)
    for piece in pieces:
        r, t2, t3 = _homology_profile(piece)
        total = (total[0] + r, total[1] + t2, total[2] + t3)
    return total


def _crushed_pieces(
    tri: Triangulation, sphere, rng: random.Random
) -> list[Triangulation]:
    """Crush ``sphere``, split off components, and simplify each."""
    crushed = crush(tri, sphere)
    return [
        simplify_fast(piece, rng.randrange(2**63)).result
        for piece in crushed.split_components()
    ]


def _log_multi_vertex_drop(tri: Triangulation) -> None:
    logger.debug(
        "dropping a %d-tetrahedron multi-vertex piece with no quadrilateral "
        "vertex normal sphere; a 0-efficient triangulation with several "
        "vertices is a 3-sphere",
        tri.size,
    )


def is_zero_efficient(tri: Triangulation) -> bool:
    """Whether the only normal 2-spheres in ``tri`` are vertex-linking.

    Requires a valid, closed, orientable triangulation.  Equivalent to
    :func:`~tritop.surfaces.find_nontrivial_normal_sphere` finding
    nothing, since any non-trivial normal sphere forces one to appear
    among the quadrilateral vertex surfaces.
    """
    skeleton = tri.skeleton()
    if not skeleton.valid:
        raise PreconditionError("0-efficiency requires a valid triangulation")
    if not skeleton.closed:
        raise PreconditionError("0-efficiency requires a closed triangulation")
    if not skeleton.orientable:
        raise PreconditionError("0-efficiency requires an orientable triangulation")
    return find_nontrivial_normal_sphere(tri) is None


def is_three_sphere(tri: Triangulation, rng_seed: int | None = None) -> bool:
    """Definite 3-sphere recognition.

    Returns false outright unless the triangulation is non-empty, valid,
    closed, connected, orientable and has trivial first homology.  The
    remaining candidates go through the crushing worklist: every
    quadrilateral vertex normal sphere found is crushed and the simplified
    components re-enter the list; a one-vertex leftover with no octagonal
    almost normal sphere disproves the 3-sphere, and an exhausted worklist
    proves it.
    """
    skeleton = tri.skeleton()
    if tri.size == 0 or not (
        skeleton.valid
        and skeleton.closed
        and skeleton.connected
        and skeleton.orientable
    ):
        return False
    rng = random.Random(rng_seed)
    start = simplify_fast(tri, rng.randrange(2**63)).result
    if not first_homology(start).is_trivial:
        return False
    worklist = [start]
    while worklist:
        current = worklist.pop()
        sphere = find_nontrivial_normal_sphere(current)
        if sphere is not None:
            for piece in _crushed_pieces(current, sphere, rng):
                # Crushing a trivial-homology manifold can only detach
                # trivial-homology pieces.
                assert first_homology(piece).is_trivial
                worklist.append(piece)
        elif len(current.skeleton().vertices) == 1:
            if find_almost_normal_sphere(current) is None:
                return False
            # The octagonal almost normal sphere certifies this piece as a
            # 3-sphere; drop it.
        else:
            _log_multi_vertex_drop(current)
    return True


def is_ball(tri: Triangulation, rng_seed: int | None = None) -> bool:
    """Definite 3-ball recognition.

    Returns false unless the triangulation is valid, connected, orientable
    and bounded by exactly one 2-sphere; otherwise simplifies, cones the
    boundary to a point, simplifies again and hands the closed result to
    :func:`is_three_sphere`.
    """
    skeleton = tri.skeleton()
    if not (skeleton.valid and skeleton.connected and skeleton.orientable):
        return False
    if len(skeleton.boundary_components) != 1:
        return False
    boundary = skeleton.boundary_components[0]
    if boundary.euler != 2 or not boundary.orientable:
        return False
    rng = random.Random(rng_seed)
    trimmed = simplify_fast(tri, rng.randrange(2**63)).result
    coned = cone_boundary(trimmed)
    coned = simplify_fast(coned, rng.randrange(2**63)).result
    return is_three_sphere(coned, rng_seed=rng.randrange(2**63))


def connected_sum_decomposition(
    tri: Triangulation, rng_seed: int | None = None
) -> DecompositionResult:
    """Split a closed, connected, orientable triangulation into primes.

    Runs the same crushing worklist as :func:`is_three_sphere`.  A piece
    with no quadrilateral vertex normal sphere enters the output if it has
    non-trivial first homology, or is one-vertex with no octagonal almost
    normal sphere; recognised 3-sphere pieces are dropped.  Because
    crushing may also silently delete ``RP3``, ``S2xS1`` and ``L(3,1)``
    summands, the final step compares the summed homology profile of the
    output against the input's and appends named copies to cover the
    difference.
    """
    skeleton = tri.skeleton()
    if not skeleton.valid:
        raise PreconditionError(
            "connected sum decomposition requires a valid triangulation"
        )
    if not skeleton.closed:
        raise PreconditionError(
            "connected sum decomposition requires a closed triangulation"
        )
    if not skeleton.connected:
        raise PreconditionError(
            "connected sum decomposition requires a connected triangulation"
        )
    if not skeleton.orientable:
        raise PreconditionError(
            "connected sum decomposition requires an orientable triangulation"
        )
    rng = random.Random(rng_seed)
    target = _homology_profile(tri)
    start = simplify_fast(tri, rng.randrange(2**63)).result
    assert _homology_profile(start) == target  # simplification is homeomorphism-safe
    worklist = [start] if start.size else []
    output: list[Triangulation] = []
    bound = target
    while worklist:
        current = worklist.pop()
        sphere = find_nontrivial_normal_sphere(current)
        if sphere is not None:
            worklist.extend(_crushed_pieces(current, sphere, rng))
        elif not first_homology(current).is_trivial:
            output.append(current)
        elif len(current.skeleton().vertices) == 1:
            if find_almost_normal_sphere(current) is None:
                output.append(current)
            # else: a certified 3-sphere piece; drop it.
        else:
            _log_multi_vertex_drop(current)
        # Crushing can only pull summands apart or delete named pieces, so
        # the homology totals over the remaining pieces never increase.
        total = _profile_total(worklist + output)
        assert all(t <= b for t, b in zip(total, bound))
        bound = total
    reached = _profile_total(output)
    appended = {
        "S2xS1": target[0] - reached[0],
        "RP3": target[1] - reached[1],
        "L(3,1)": target[2] - reached[2],
    }
    assert all(count >= 0 for count in appended.values())
    return DecompositionResult(summands=output, appended_named=appended)
