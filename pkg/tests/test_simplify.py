"""Tests for greedy and exhaustive simplification."""

import random

import pytest

from tritop import (
    BfsFrontier,
    PreconditionError,
    SimplifyReport,
    Triangulation,
    enumerate_moves,
    first_homology,
    one_tet_ball,
    perform_move,
    projective_space,
    simplify_exhaustive,
    simplify_fast,
)
from tritop.moves import (
    COLLAPSEEDGE,
    PACHNER23,
    PACHNER32,
    SHELL,
    TWOONEEDGE,
    TWOZEROEDGE,
    TWOZEROVERTEX,
)
from tritop.perm4 import S4

from .oracles import random_valid_triangulation

REDUCING_KINDS = [
    COLLAPSEEDGE,
    PACHNER32,
    TWOZEROEDGE,
    TWOONEEDGE,
    TWOZEROVERTEX,
    SHELL,
]

# One tetrahedron, all faces glued in pairs, a single vertex: a 3-sphere.
# No 2-3 move ever applies here (both sides of each face lie in the one
# tetrahedron), so this node is isolated in the search graph.
ONE_VERTEX_SPHERE = "tets 1\n0(301) 0(120) 0(123) 0(023)\n"

# Two tetrahedra, closed, a single vertex, trivial first homology: a
# 3-sphere with 2-3 moves available (found by brute force over all
# two-tetrahedron gluings).
TWO_TET_ONE_VERTEX_SPHERE = (
    "tets 2\n1(302) 1(123) 0(123) 0(023)\n1(013) 1(012) 0(120) 0(013)\n"
)

# Two tetrahedra, closed, a single vertex, first homology Z_2:
# a one-vertex projective space.
ONE_VERTEX_PROJECTIVE = (
    "tets 2\n1(103) 0(302) 0(130) 1(123)\n1(032) 0(102) 1(021) 0(123)\n"
)


def h1(tri):
    return str(first_homology(tri))


def face_wedge():
    tri = Triangulation(2)
    tri.glue(0, 0, 1, (0, 1, 2, 3))
    return tri


def double_tetrahedron():
    tri = Triangulation(2)
    for f in range(4):
        tri.glue(0, f, 1, (0, 1, 2, 3))
    return tri


def grow(tri, steps, seed):
    """Apply `steps` seeded random 2-3 moves."""
    rng = random.Random(seed)
    cur = tri
    for _ in range(steps):
        options = enumerate_moves(cur, [PACHNER23])
        if not options:
            break
        cur = perform_move(cur, rng.choice(options))
    return cur


def all_one_tet_closed_triangulations():
    """Every closed valid triangulation with a single tetrahedron.

    Brute force: the four faces are glued in two pairs (three pairings),
    and each pair admits six gluing permutations.
    """
    found = []
    for pairs in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]:
        maps = []
        for f, g in pairs:
            maps.append([p for p in S4 if p[f] == g])
        for p0 in maps[0]:
            for p1 in maps[1]:
                tri = Triangulation(1)
                tri.glue(0, pairs[0][0], 0, p0)
                tri.glue(0, pairs[1][0], 0, p1)
                sk = tri.skeleton()
                if sk.valid and sk.closed:
                    found.append(tri)
    return found


def first_invalid_triangulation():
    """Deterministically search for a small invalid triangulation."""
    rng = random.Random(7)
    from .oracles import random_triangulation

    for _ in range(300):
        tri = random_triangulation(rng, 2)
        if not tri.skeleton().valid:
            return tri
    raise AssertionError("no invalid example found")


# ---------------------------------------------------------------------------
# simplify_fast


def test_fast_rejects_invalid_input():
    with pytest.raises(PreconditionError):
        simplify_fast(first_invalid_triangulation(), rng_seed=0)


def test_fast_leaves_minimal_projective_space_alone():
    tri = projective_space()
    # Oracle: no tetrahedron-reducing move is safe anywhere on this
    # triangulation, so a correct simplifier must return it untouched.
    for kind in REDUCING_KINDS:
        assert enumerate_moves(tri, [kind]) == []
    report = simplify_fast(tri, rng_seed=3)
    assert report.initial_n == 2
    assert report.final_n == 2
    assert report.moves_applied == ()
    assert report.status == "unchanged"
    assert report.result.to_text() == tri.to_text()


def test_fast_undoes_a_single_inflation_of_projective_space():
    tri = projective_space()
    bigger = perform_move(tri, enumerate_moves(tri, [PACHNER23])[0])
    assert bigger.size == 3
    report = simplify_fast(bigger, rng_seed=0)
    assert report.final_n == 2
    assert report.status == "reduced"
    assert h1(report.result) == h1(tri)


def test_fast_on_bare_tetrahedron_cannot_reduce():
    tri = one_tet_ball()
    # No reducing move applies: shelling needs one to three glued faces,
    # and every other reducing move needs at least one internal face.
    for kind in REDUCING_KINDS:
        assert enumerate_moves(tri, [kind]) == []
    report = simplify_fast(tri, rng_seed=11)
    # A book closing does apply (two boundary faces folded along a shared
    # edge), so the gluings may change -- but the size cannot.
    assert report.final_n == 1
    assert report.status == "unchanged"
    assert all(move.kind == "BookClose" for move in report.moves_applied)
    out = report.result.skeleton()
    assert out.valid and not out.closed
    assert h1(report.result) == "0"
    assert report.replay(tri).to_text() == report.result.to_text()


def test_fast_reduces_every_inflated_fixture():
    for name, base, steps in [
        ("sphere", double_tetrahedron(), 4),
        ("projective", projective_space(), 3),
        ("ball", face_wedge(), 4),
    ]:
        grown = grow(base, steps, seed=17)
        assert grown.size > base.size, name
        report = simplify_fast(grown, rng_seed=2)
        # A 2-3 move always leaves a degree-three edge behind, so at
        # least one reduction must be found.
        assert report.final_n < grown.size, name
        assert report.status == "reduced", name


def test_fast_replay_reproduces_result():
    grown = grow(projective_space(), 4, seed=23)
    report = simplify_fast(grown, rng_seed=5)
    assert report.replay(grown).to_text() == report.result.to_text()


def test_fast_is_deterministic_given_a_seed():
    grown = grow(double_tetrahedron(), 5, seed=29)
    a = simplify_fast(grown, rng_seed=1234)
    b = simplify_fast(grown, rng_seed=1234)
    assert a.moves_applied == b.moves_applied
    assert a.final_n == b.final_n
    assert a.result.to_text() == b.result.to_text()
    assert a.rng_seed == b.rng_seed == 1234


def test_fast_records_a_seed_when_none_is_given():
    tri = projective_space()
    report = simplify_fast(tri)
    again = simplify_fast(tri, rng_seed=report.rng_seed)
    assert again.moves_applied == report.moves_applied
    assert again.result.to_text() == report.result.to_text()


def test_fast_preserves_invariants():
    cases = [
        grow(double_tetrahedron(), 4, seed=31),
        grow(projective_space(), 4, seed=37),
        grow(face_wedge(), 3, seed=41),
    ]
    rng = random.Random(43)
    while len(cases) < 9:
        tri = random_valid_triangulation(rng, rng.randrange(2, 5))
        cases.append(tri)
    for tri in cases:
        sk = tri.skeleton()
        report = simplify_fast(tri, rng_seed=47)
        out = report.result.skeleton()
        assert report.final_n <= tri.size
        assert report.initial_n == tri.size
        assert report.final_n == report.result.size
        assert out.valid
        assert out.closed == sk.closed
        assert out.orientable == sk.orientable
        assert out.connected == sk.connected
        assert h1(report.result) == h1(tri)


# ---------------------------------------------------------------------------
# BfsFrontier


def test_frontier_deduplicates_and_caps_levels():
    frontier = BfsFrontier(base_level=2, height=1)
    assert frontier.admit("aaa", 2)
    assert not frontier.admit("aaa", 2)
    assert not frontier.admit("aaa", 3)
    assert frontier.admit("bbb", 3)
    assert not frontier.admit("ccc", 4)
    assert frontier.levels == {2: {"aaa"}, 3: {"bbb"}}
    assert frontier.visited == {"aaa", "bbb"}


# ---------------------------------------------------------------------------
# simplify_exhaustive


def test_exhaustive_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        simplify_exhaustive(face_wedge())  # not closed
    with pytest.raises(PreconditionError):
        simplify_exhaustive(projective_space())  # two vertices
    with pytest.raises(ValueError):
        simplify_exhaustive(
            Triangulation.from_text(ONE_VERTEX_SPHERE), height=-1
        )


def test_exhaustive_cannot_shrink_minimal_projective_space():
    tri = Triangulation.from_text(ONE_VERTEX_PROJECTIVE)
    sk = tri.skeleton()
    assert sk.valid and sk.closed and len(sk.vertices) == 1
    assert h1(tri) == "Z_2"
    # Oracle: no closed one-tetrahedron triangulation has first homology
    # Z_2, so no sequence of manifold-preserving moves can reach one.
    assert all(
        h1(one_tet) != "Z_2" for one_tet in all_one_tet_closed_triangulations()
    )
    report = simplify_exhaustive(tri, height=2)
    assert report.status == "try larger h"
    assert report.final_n == report.initial_n == 2
    assert report.moves_applied == ()
    assert report.result.to_text() == tri.to_text()


def test_exhaustive_shrinks_an_inflated_sphere():
    base = Triangulation.from_text(TWO_TET_ONE_VERTEX_SPHERE)
    grown = grow(base, 2, seed=53)
    assert grown.size == 4
    report = simplify_exhaustive(grown, height=2)
    assert report.status == "reduced"
    assert report.final_n <= grown.size - 1
    assert report.replay(grown).to_text() == report.result.to_text()
    assert h1(report.result) == h1(grown)
    assert report.result.skeleton().closed


def test_exhaustive_succeeds_at_zero_height_when_a_reduction_is_immediate():
    base = Triangulation.from_text(ONE_VERTEX_PROJECTIVE)
    bigger = perform_move(base, enumerate_moves(base, [PACHNER23])[0])
    report = simplify_exhaustive(bigger, height=0)
    assert report.status == "reduced"
    assert report.final_n == 2
    assert report.replay(bigger).to_text() == report.result.to_text()


def test_exhaustive_reports_failure_on_an_isolated_node():
    # The one-tetrahedron sphere admits no 2-3 move at all, so the search
    # graph around it contains only the start node.
    tri = Triangulation.from_text(ONE_VERTEX_SPHERE)
    assert enumerate_moves(tri, [PACHNER23, PACHNER32]) == []
    report = simplify_exhaustive(tri, height=2)
    assert report.status == "try larger h"
    assert report.final_n == 1


def test_exhaustive_parallel_matches_serial():
    grown = grow(Triangulation.from_text(TWO_TET_ONE_VERTEX_SPHERE), 2, seed=59)
    serial = simplify_exhaustive(grown, height=1)
    parallel = simplify_exhaustive(grown, height=1, parallel_width=2)
    assert serial.moves_applied == parallel.moves_applied
    assert serial.final_n == parallel.final_n
    assert serial.result.to_text() == parallel.result.to_text()


def test_exhaustive_failure_reports_are_replayable():
    tri = Triangulation.from_text(ONE_VERTEX_PROJECTIVE)
    report = simplify_exhaustive(tri, height=1)
    assert report.status == "try larger h"
    assert report.replay(tri).to_text() == tri.to_text()


def test_report_is_a_frozen_record():
    tri = projective_space()
    report = simplify_fast(tri, rng_seed=0)
    assert isinstance(report, SimplifyReport)
    with pytest.raises(AttributeError):
        report.final_n = 0
