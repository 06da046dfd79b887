"""End-to-end acceptance criteria.

Each test enforces one headline guarantee of the package at full scale,
and its verdict is printed as a single line at the end of the pytest run
(see ``conftest``).  The suite leans on the independent oracles in
``oracles.py`` (unpruned census enumeration, support-set extreme rays,
pairwise adjacency scans) so that the fast production code is always
checked against a slow implementation that is obviously correct.

These tests are deliberately heavy — the whole module takes a few
minutes, dominated by the four-tetrahedron censuses.  Deselect it with
``-m "not acceptance"`` during development.
"""

from __future__ import annotations

import random
import time
from pathlib import Path

import pytest

from tritop import (
    MOVE_DELTAS,
    STANDARD,
    CensusSpec,
    ConeProblem,
    PreconditionError,
    RayTrie,
    adjacent,
    analyze,
    connected_sum_decomposition,
    crush,
    decode,
    enumerate_census,
    enumerate_extreme_rays,
    enumerate_moves,
    enumerate_taut,
    enumerate_vertex_angle_structures,
    enumerate_vertex_surfaces,
    find_nontrivial_normal_sphere,
    first_homology,
    is_taut,
    is_three_sphere,
    is_zero_efficient,
    perform_move,
    projective_space,
    simplify_exhaustive,
    simplify_fast,
    vertex_link_vector,
)

from .oracles import adjacent_by_scan, brute_census, extreme_rays_by_support

pytestmark = pytest.mark.acceptance

TWO_TET_SPHERE = "Acbcaccbhcbf"  # two-tetrahedron one-vertex 3-sphere

# The two one-sided projective planes in the minimal projective space,
# rendered in standard coordinates (quad parts only are nonzero).
PROJECTIVE_PLANES = {
    "0 0 0 0 ; 0 0 1 || 0 0 0 0 ; 0 0 1",
    "0 0 0 0 ; 0 1 0 || 0 0 0 0 ; 0 1 0",
}

# Closed census class counts with finiteness required, per size.
ORIENTABLE_COUNTS = {1: 4, 2: 16, 3: 76, 4: 532}
CLOSED_FINITE_COUNTS = {1: 4, 2: 17, 3: 81, 4: 577}

# The unique two-vertex 0-efficient 3-sphere made from four tetrahedra.
UNIQUE_TWO_VERTEX_SPHERE = "Aebbbcbtcdjccsccvcdj"


@pytest.fixture(scope="module")
def orientable_censuses():
    """Closed orientable finite censuses for n = 1..4, with wall times."""
    sigs, wall = {}, {}
    for n in (1, 2, 3, 4):
        start = time.perf_counter()
        sigs[n] = enumerate_census(
            CensusSpec(n, closed=True, orientable=True, finite=True)
        )
        wall[n] = time.perf_counter() - start
    return sigs, wall


@pytest.fixture(scope="module")
def closed_finite_censuses():
    """Closed finite censuses (both orientabilities) for n = 1..4."""
    return {
        n: enumerate_census(CensusSpec(n, closed=True, finite=True))
        for n in (1, 2, 3, 4)
    }


def inflate(sig, target, seed):
    """Grow a triangulation to ``target`` tetrahedra with seeded 2-3 moves."""
    tri = decode(sig)
    rng = random.Random(seed)
    while tri.size < target:
        moves = enumerate_moves(tri, kinds=["Pachner23"])
        tri = perform_move(tri, rng.choice(moves))
    return tri


def test_projective_space_session():
    """Projective-space session: Z_2, five standard vertex surfaces, two chi=1 planes, under one second."""
    start = time.perf_counter()
    tri = projective_space()
    homology = str(first_homology(tri))
    surfaces = enumerate_vertex_surfaces(tri, STANDARD)
    planes = {
        sv.rendered() for sv in surfaces if analyze(tri, sv).euler_char == 1
    }
    elapsed = time.perf_counter() - start
    assert homology == "Z_2"
    assert len(surfaces) == 5
    assert planes == PROJECTIVE_PLANES
    assert elapsed < 1.0


def test_census_counts_and_brute_oracle(orientable_censuses):
    """Census counts 4/16/76/532 (n=4 within 10 minutes); n<=2 matches the unpruned oracle on every flag combination."""
    sigs, wall = orientable_censuses
    assert {n: len(sigs[n]) for n in sigs} == ORIENTABLE_COUNTS
    assert wall[4] < 600.0

    for n in (1, 2):
        brute = brute_census(n)
        flags = {}
        for sig in brute:
            skeleton = decode(sig).skeleton()
            flags[sig] = (
                not skeleton.has_boundary_faces,
                skeleton.orientable,
                skeleton.valid and not skeleton.ideal,
            )
        for closed in (False, True):
            for orientable in (False, True):
                for finite in (False, True):
                    expected = [
                        sig
                        for sig, (is_closed, is_ori, is_fin) in flags.items()
                        if (is_closed or not closed)
                        and (is_ori or not orientable)
                        and (is_fin or not finite)
                    ]
                    got = enumerate_census(
                        CensusSpec(
                            n, closed=closed, orientable=orientable, finite=finite
                        )
                    )
                    assert got == expected, (n, closed, orientable, finite)


def test_unique_two_vertex_zero_efficient_sphere(orientable_censuses):
    """Exactly one two-vertex 0-efficient 3-sphere among the 532 four-tetrahedron classes, within 30 minutes."""
    sigs, _ = orientable_censuses
    start = time.perf_counter()
    two_vertex = [
        sig for sig in sigs[4] if len(decode(sig).skeleton().vertices) == 2
    ]
    hits = []
    for sig in two_vertex:
        tri = decode(sig)
        if is_zero_efficient(tri) and is_three_sphere(tri, rng_seed=0):
            hits.append(sig)
    elapsed = time.perf_counter() - start
    assert len(two_vertex) == 106
    assert hits == [UNIQUE_TWO_VERTEX_SPHERE]
    assert elapsed < 1800.0


def test_scale_limits_documented():
    """Large-scale results that are out of scope are stated in the README."""
    readme = Path(__file__).resolve().parents[1] / "README.md"
    text = readme.read_text(encoding="utf-8")
    assert "## Scale" in text
    assert "Weber–Seifert" in text
    assert "652,635,906" in text
    assert "1.6" in text


def test_move_safety_census_sweep(closed_finite_censuses):
    """Every enumerated move on every closed census triangulation preserves topology and hits its size delta."""
    total = 0
    violations = []
    for n in (1, 2, 3, 4):
        for sig in closed_finite_censuses[n]:
            tri = decode(sig)
            homology = str(first_homology(tri))
            skeleton = tri.skeleton()
            components = len(tri.split_components())
            for move in enumerate_moves(tri):
                total += 1
                out = perform_move(tri, move)
                after = out.skeleton()
                ok = (
                    str(first_homology(out)) == homology
                    and after.orientable == skeleton.orientable
                    and after.closed == skeleton.closed
                    and len(out.split_components()) == components
                )
                if move.kind in MOVE_DELTAS:
                    ok = ok and out.size - tri.size == MOVE_DELTAS[move.kind]
                else:  # edge collapse removes a variable number of tetrahedra
                    ok = ok and out.size < tri.size
                if not ok:
                    violations.append((sig, move.kind))
    assert sum(len(v) for v in closed_finite_censuses.values()) == sum(
        CLOSED_FINITE_COUNTS.values()
    )
    assert total > 6000
    assert violations == []


def test_double_description_against_support_oracle():
    """Double description matches the support-set oracle on 500 random systems; trie adjacency matches pairwise scans on every intermediate cone."""
    rng = random.Random(424242)
    for _ in range(500):
        dim = rng.randrange(2, 11)
        count = rng.randrange(0, 7)
        rows = [
            tuple(rng.randrange(-3, 4) for _ in range(dim)) for _ in range(count)
        ]
        got = [ray.vector for ray in enumerate_extreme_rays(ConeProblem(dim, rows))]
        want = extreme_rays_by_support([list(row) for row in rows], dim)
        assert got == want, (dim, rows)
        for k in range(count + 1):
            rays = enumerate_extreme_rays(ConeProblem(dim, rows[:k]))
            trie = RayTrie(dim)
            for ray in rays:
                trie.insert(ray)
            vectors = [ray.vector for ray in rays]
            for a in range(len(rays)):
                for b in range(a + 1, len(rays)):
                    fast = adjacent(trie, rays[a], rays[b])
                    slow = adjacent_by_scan(vectors, vectors[a], vectors[b])
                    assert fast == slow, (dim, rows[:k], a, b)


def test_certificate_lemmas(orientable_censuses):
    """Taut structures equal taut-filtered vertex structures; quad sphere certificates match standard-coordinate certificates and crushing shrinks."""
    # Taut enumeration agrees with filtering the vertex structures on
    # every small fully-glued triangulation that admits angle equations.
    ideal_checked = 0
    for n in (1, 2):
        for sig in enumerate_census(CensusSpec(n, closed=True)):
            tri = decode(sig)
            try:
                taut = enumerate_taut(tri)
            except PreconditionError:
                continue
            ideal_checked += 1
            want = {
                a.rendered()
                for a in enumerate_vertex_angle_structures(tri)
                if is_taut(a)
            }
            assert {a.rendered() for a in taut} == want, sig
    assert ideal_checked == 19

    # A closed orientable triangulation has a nontrivial normal sphere in
    # quadrilateral coordinates exactly when some standard-coordinate
    # vertex surface other than a vertex link has positive Euler
    # characteristic, and crushing that sphere strictly shrinks.
    sigs, _ = orientable_censuses
    checked = with_sphere = 0
    failures = []
    for n in (1, 2, 3, 4):
        for sig in sigs[n]:
            tri = decode(sig)
            skeleton = tri.skeleton()
            links = {
                vertex_link_vector(tri, i).coords
                for i in range(len(skeleton.vertices))
            }
            standard_certificate = any(
                analyze(tri, sv).euler_char > 0 and sv.coords not in links
                for sv in enumerate_vertex_surfaces(tri, STANDARD)
            )
            sphere = find_nontrivial_normal_sphere(tri)
            if (sphere is not None) != standard_certificate:
                failures.append(("equivalence", sig))
            if sphere is not None:
                with_sphere += 1
                if crush(tri, sphere).size >= tri.size:
                    failures.append(("crush", sig))
            checked += 1
    assert checked == 628
    assert with_sphere == 447
    assert failures == []


def test_sphere_recognition_suite(orientable_censuses):
    """One hundred disguised 3-spheres recognised; every nontrivial-homology census class rejected; sphere decompositions are empty."""
    spheres = [
        inflate(TWO_TET_SPHERE, target=3 + (i % 10), seed=1000 + i)
        for i in range(100)
    ]
    missed = [i for i, tri in enumerate(spheres) if not is_three_sphere(tri, rng_seed=0)]
    assert missed == []

    for tri in spheres[:25]:
        result = connected_sum_decomposition(tri, rng_seed=0)
        assert result.summands == []
        assert not any(result.appended_named.values())

    sigs, _ = orientable_censuses
    everything = [sig for n in (1, 2, 3, 4) for sig in sigs[n]]
    nontrivial = [
        sig for sig in everything if not first_homology(decode(sig)).is_trivial
    ]
    assert len(nontrivial) == 390
    false_positives = [
        sig for sig in nontrivial if is_three_sphere(decode(sig), rng_seed=0)
    ]
    assert false_positives == []


def test_exhaustive_simplification_suite():
    """Height-2 exhaustive search reduces at least 95% of fast-reducible disguised spheres without changing homology."""
    reduced_fast = reduced_exhaustive = 0
    homology_changed = []
    for i in range(40):
        tri = inflate(TWO_TET_SPHERE, target=4 + (i % 7), seed=2000 + i)
        fast = simplify_fast(tri, rng_seed=0)
        exhaustive = simplify_exhaustive(tri, height=2)
        if str(first_homology(exhaustive.result)) != str(first_homology(tri)):
            homology_changed.append(i)
        if fast.final_n < tri.size:
            reduced_fast += 1
            if exhaustive.final_n < tri.size:
                reduced_exhaustive += 1
    assert homology_changed == []
    assert reduced_fast == 40
    assert reduced_exhaustive >= 0.95 * reduced_fast
