"""Fast greedy simplification and exhaustive search through move space.

``simplify_fast`` repeatedly applies tetrahedron-reducing moves by
priority, mixes in bounded random 4-4 phases to escape local minima, and
uses book openings/closings on bounded triangulations.  It never adds
tetrahedra.

``simplify_exhaustive`` is slower but stronger: a breadth-first search
over the graph whose nodes are isomorphism classes of one-vertex
triangulations of the same closed manifold and whose arcs are single 2-3
or 3-2 moves, restricted to a bounded number of tetrahedra.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .isosig import encode
from .moves import (
    BOOKCLOSE,
    BOOKOPEN,
    COLLAPSEEDGE,
    FOURFOUR,
    PACHNER23,
    PACHNER32,
    SHELL,
    TWOONEEDGE,
    TWOZEROEDGE,
    TWOZEROVERTEX,
    MoveKind,
    enumerate_moves,
    perform_move,
)
from .triangulation import PreconditionError, Triangulation

#: simplify_fast greedy priority: each tier is tried only when every
#: earlier tier has no safe instance.
GREEDY_PRIORITY = (
    (COLLAPSEEDGE,),
    (PACHNER32, TWOZEROEDGE, TWOONEEDGE),
    (TWOZEROVERTEX,),
    (SHELL,),
)

STATUS_REDUCED = "reduced"
STATUS_UNCHANGED = "unchanged"
STATUS_TRY_LARGER_HEIGHT = "try larger h"


@dataclass(frozen=True)
class SimplifyReport:
    """Outcome of a simplification run.

    ``moves_applied`` replayed in order from the input triangulation
    reproduces ``result`` exactly (same labelling, not merely isomorphic).
    """

    initial_n: int
    final_n: int
    moves_applied: tuple[MoveKind, ...]
    rng_seed: int
    status: str
    result: Triangulation

    def replay(self, tri: Triangulation) -> Triangulation:
        """Apply ``moves_applied`` to ``tri`` and return the outcome."""
        for move in self.moves_applied:
            tri = perform_move(tri, move)
        return tri


def _first_greedy_move(tri: Triangulation) -> MoveKind | None:
    """First safe tetrahedron-reducing move in priority order, if any."""
    for tier in GREEDY_PRIORITY:
        found = enumerate_moves(tri, tier)
        if found:
            return found[0]
    return None


def simplify_fast(
    tri: Triangulation,
    rng_seed: int | None = None,
    *,
    four_four_coefficient: int = 5,
) -> SimplifyReport:
    """Greedy simplification with random 4-4 phases and book moves.

    Loops through four steps until none makes progress:

    1. Greedily apply reducing moves (edge collapses first, then 3-2 /
       2-0-edge / 2-1-edge, then 2-0-vertex, then boundary shells).
    2. Apply up to ``c * R`` random 4-4 moves where ``R`` is the largest
       number of simultaneously available 4-4 moves seen during this
       phase and ``c`` is ``four_four_coefficient``; return to step 1 as
       soon as a reducing move becomes available.
    3. On bounded triangulations, open books as long as possible; keep
       the openings only if they enable an edge collapse (and collapse),
       otherwise discard them.
    4. Close one book if possible and restart; otherwise terminate.

    The run is deterministic given ``rng_seed``; a fresh seed is drawn
    and recorded when none is supplied.
    """
    if not tri.skeleton().valid:
        raise PreconditionError("cannot simplify an invalid triangulation")
    if rng_seed is None:
        rng_seed = random.randrange(2**63)
    rng = random.Random(rng_seed)

    current = tri
    applied: list[MoveKind] = []

    def apply(move: MoveKind) -> None:
        nonlocal current
        current = perform_move(current, move)
        applied.append(move)

    while True:
        move = _first_greedy_move(current)
        while move is not None:
            apply(move)
            move = _first_greedy_move(current)

        # Random 4-4 phase.  The budget grows with the richest supply of
        # 4-4 moves seen so far in this phase.
        reducible = False
        attempts = 0
        richest = len(enumerate_moves(current, [FOURFOUR]))
        while attempts < four_four_coefficient * richest:
            options = enumerate_moves(current, [FOURFOUR])
            if not options:
                break
            apply(rng.choice(options))
            attempts += 1
            richest = max(richest, len(enumerate_moves(current, [FOURFOUR])))
            if _first_greedy_move(current) is not None:
                reducible = True
                break
        if reducible:
            continue

        # Book openings on a scratch copy, kept only when they enable an
        # edge collapse.
        if current.has_boundary_faces():
            scratch = current
            openings: list[MoveKind] = []
            options = enumerate_moves(scratch, [BOOKOPEN])
            while options:
                scratch = perform_move(scratch, options[0])
                openings.append(options[0])
                options = enumerate_moves(scratch, [BOOKOPEN])
            if openings:
                collapses = enumerate_moves(scratch, [COLLAPSEEDGE])
                if collapses:
                    applied.extend(openings)
                    current = scratch
                    apply(collapses[0])
                    continue

        closings = enumerate_moves(current, [BOOKCLOSE])
        if closings:
            apply(closings[0])
            continue
        break

    status = STATUS_REDUCED if current.size < tri.size else STATUS_UNCHANGED
    return SimplifyReport(
        initial_n=tri.size,
        final_n=current.size,
        moves_applied=tuple(applied),
        rng_seed=rng_seed,
        status=status,
        result=current,
    )


@dataclass
class BfsFrontier:
    """Visited-signature bookkeeping for the bounded breadth-first search.

    Signatures are partitioned by level (tetrahedron count); only levels
    up to ``base_level + height`` are admitted, and no signature is
    admitted twice.
    """

    base_level: int
    height: int
    levels: dict[int, set[str]] = field(default_factory=dict)
    visited: set[str] = field(default_factory=set)

    def admit(self, signature: str, level: int) -> bool:
        """Record a signature; False if already seen or above the cap."""
        if level > self.base_level + self.height:
            return False
        if signature in self.visited:
            return False
        self.visited.add(signature)
        self.levels.setdefault(level, set()).add(signature)
        return True


def _expand(node: Triangulation, cap: int):
    """Safe 2-3 (below the level cap) and 3-2 neighbours of one node."""
    children = []
    for move in enumerate_moves(node, [PACHNER23, PACHNER32]):
        if move.kind == PACHNER23 and node.size + 1 > cap:
            continue
        children.append((move, perform_move(node, move)))
    return children


def simplify_exhaustive(
    tri: Triangulation,
    height: int = 2,
    parallel_width: int | None = None,
) -> SimplifyReport:
    """Breadth-first search for any smaller triangulation.

    Starting from a closed one-vertex triangulation with ``n`` tetrahedra,
    searches the graph of one-vertex triangulations connected by 2-3 and
    3-2 moves, visiting only nodes with at most ``n + height`` tetrahedra,
    deduplicated by isomorphism signature.  On reaching any node with
    fewer than ``n`` tetrahedra, that triangulation is simplified further
    with :func:`simplify_fast` and the combined run is reported.  If the
    bounded graph is exhausted instead, the report carries the status
    ``"try larger h"`` and the input unchanged.

    ``parallel_width`` spreads node expansion across that many worker
    threads; results are merged in deterministic submission order.
    """
    sk = tri.skeleton()
    if not sk.valid:
        raise PreconditionError("cannot simplify an invalid triangulation")
    if not sk.closed:
        raise PreconditionError("exhaustive search requires a closed triangulation")
    if len(sk.vertices) != 1:
        raise PreconditionError("exhaustive search requires a one-vertex triangulation")
    if height < 0:
        raise ValueError("height must be non-negative")

    base = tri.size
    cap = base + height
    start_sig = encode(tri)
    frontier = BfsFrontier(base_level=base, height=height)
    frontier.admit(start_sig, base)
    # signature -> (parent signature, move from parent, triangulation as reached)
    paths: dict[str, tuple[str | None, MoveKind | None, Triangulation]] = {
        start_sig: (None, None, tri)
    }
    wave: list[str] = [start_sig]

    def finish(found_sig: str) -> SimplifyReport:
        chain: list[MoveKind] = []
        sig = found_sig
        while True:
            parent, move, _ = paths[sig]
            if parent is None:
                break
            chain.append(move)
            sig = parent
        chain.reverse()
        post = simplify_fast(paths[found_sig][2], rng_seed=0)
        return SimplifyReport(
            initial_n=tri.size,
            final_n=post.final_n,
            moves_applied=tuple(chain) + post.moves_applied,
            rng_seed=post.rng_seed,
            status=STATUS_REDUCED,
            result=post.result,
        )

    while wave:
        nodes = [paths[sig][2] for sig in wave]
        if parallel_width is not None and parallel_width > 1:
            with ThreadPoolExecutor(max_workers=parallel_width) as pool:
                expansions = list(pool.map(lambda t: _expand(t, cap), nodes))
        else:
            expansions = [_expand(node, cap) for node in nodes]

        next_wave: list[str] = []
        for sig, children in zip(wave, expansions):
            for move, child in children:
                child_sig = encode(child)
                if not frontier.admit(child_sig, child.size):
                    continue
                paths[child_sig] = (sig, move, child)
                if child.size < base:
                    return finish(child_sig)
                next_wave.append(child_sig)
        wave = next_wave

    return SimplifyReport(
        initial_n=tri.size,
        final_n=tri.size,
        moves_applied=(),
        rng_seed=0,
        status=STATUS_TRY_LARGER_HEIGHT,
        result=tri,
    )
