"""Exhaustive census generation of small triangulations.

Enumerates every triangulation on a fixed number of tetrahedra, up to
combinatorial isomorphism, subject to optional filters: all faces glued
(``closed``), orientable, and ``finite`` (valid with no ideal vertices).
Designed for desk-scale sizes (a handful of tetrahedra).

The search backtracks over the unglued face slots in order.  Each slot
either stays boundary (when permitted) or glues, via one of the six
face-to-face permutations, to a later slot of a tetrahedron already in
use, or to face 0 of the next fresh tetrahedron via one fixed
permutation; restricting fresh tetrahedra to a single canonical gluing
is harmless because a fresh tetrahedron's vertices can always be
relabelled before anything else touches it.  Two exact union-find
structures with parity
prune as the filters demand: tetrahedron orientations (a gluing with an
even permutation joins opposite orientation signs) and edge identification
directions (a conflict is precisely an edge glued to itself reversed,
which no valid triangulation allows).  Both prunings are monotone --
extending a gluing table never repairs a violation -- so no filtered
triangulation is lost.  Finished tables are normalised through their
canonical signature, which removes the remaining relabelling duplicates;
the signatures are returned sorted, so output order is deterministic
regardless of search order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .isosig import encode
from .perm4 import EDGE_INDEX, FACE_VERTICES, Perm, sign
from .triangulation import PreconditionError, Triangulation

__all__ = ["CensusSpec", "enumerate_census"]


@dataclass(frozen=True)
class CensusSpec:
    """Filters for a census run.

    ``n`` is the exact tetrahedron count.  ``closed`` keeps only
    triangulations with every face glued; ``orientable`` and ``finite``
    keep only orientable resp. valid-and-not-ideal triangulations.
    """

    n: int
    closed: bool = False
    orientable: bool = False
    finite: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("tetrahedron count must be non-negative")


def _gluing_table() -> dict[tuple[int, int], list[tuple]]:
    """For each (f, g): the six permutations sending face f onto face g.

    Each entry carries the orientation relation (1 when the permutation
    is even, meaning the two tetrahedra take opposite orientation signs),
    the three edge identifications (edge number in the source face, edge
    number in the image, direction parity), and the three vertex
    identifications.
    """
    table: dict[tuple[int, int], list[tuple]] = {}
    for f in range(4):
        for g in range(4):
            entries = []
            for p in permutations(range(4)):
                if p[f] != g:
                    continue
                joins = []
                for a, b in combinations(FACE_VERTICES[f], 2):
                    c, d = p[a], p[b]
                    joins.append((EDGE_INDEX[a][b], EDGE_INDEX[c][d], 1 if c > d else 0))
                corners = tuple((a, p[a]) for a in FACE_VERTICES[f])
                entries.append((p, 1 if sign(p) > 0 else 0, tuple(joins), corners))
            table[(f, g)] = entries
    return table


_GLUE_TABLE = _gluing_table()

# The one gluing tried onto a fresh tetrahedron: its face 0, with the
# permutation sending the source face's vertices, in ascending order, to
# 1, 2, 3.  Any other gluing onto a fresh tetrahedron differs from this
# one by relabelling the fresh tetrahedron, so trying more would only
# revisit the same isomorphism classes.
def _fresh_entry(f: int) -> tuple:
    target = [0] * 4
    target[f] = 0
    for image, vertex in enumerate(sorted(FACE_VERTICES[f]), start=1):
        target[vertex] = image
    for entry in _GLUE_TABLE[(f, 0)]:
        if list(entry[0]) == target:
            return entry
    raise AssertionError("canonical fresh gluing missing from the table")


_FRESH_ENTRY = tuple(_fresh_entry(f) for f in range(4))


class _ParityUnionFind:
    """Union-find with parity relations and exact rollback.

    No path compression: the trail only needs the links made, so undoing
    a batch of unions is popping the trail back to a mark.
    """

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.parity = [0] * size
        self.rank = [0] * size
        self.classes = size
        self.trail: list[int] = []

    def find(self, x: int) -> tuple[int, int]:
        parity = 0
        while self.parent[x] != x:
            parity ^= self.parity[x]
            x = self.parent[x]
        return x, parity

    def union(self, x: int, y: int, rel: int) -> bool:
        """Impose sign(x) ^ sign(y) == rel; false on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        if self.rank[rx] > self.rank[ry]:
            rx, ry = ry, rx
            px, py = py, px
        self.parent[rx] = ry
        self.parity[rx] = px ^ py ^ rel
        self.classes -= 1
        if self.rank[rx] == self.rank[ry]:
            self.rank[ry] += 1
            self.trail.append(-rx - 1)
        else:
            self.trail.append(rx)
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            entry = self.trail.pop()
            if entry < 0:
                x = -entry - 1
                self.rank[self.parent[x]] -= 1
            else:
                x = entry
            self.parent[x] = x
            self.parity[x] = 0
            self.classes += 1


def enumerate_census(spec: CensusSpec, size_limit: int = 5) -> list[str]:
    """All isomorphism classes passing the filters, as sorted signatures.

    ``size_limit`` is a soft guard against accidental huge runs; raise it
    explicitly for larger searches.
    """
    if spec.n > size_limit:
        raise PreconditionError(
            f"census size {spec.n} exceeds the soft limit {size_limit}; "
            "pass a larger size_limit to proceed"
        )
    n = spec.n
    if n == 0:
        return []

    adj: list[int | None] = [None] * (4 * n)  # -1 boundary, else partner slot
    gluings: list[tuple[int, int, int, Perm]] = []
    orient = _ParityUnionFind(n)
    edges = _ParityUnionFind(6 * n)
    corners = _ParityUnionFind(4 * n)
    found: set[str] = set()
    # With every face glued and no edge reversed (the edge parities
    # guarantee that), each vertex link is a closed connected surface and
    # the complex's Euler characteristic V - E + 2n - n is non-negative,
    # vanishing exactly when every link is a sphere.  So in a fully-glued
    # finite census the skeleton check reduces to counting identification
    # classes, which the union-find structures already track.
    euler_mode = spec.closed and spec.finite

    def emit() -> None:
        if euler_mode:
            if corners.classes - edges.classes + n != 0:
                return
        tri = Triangulation.from_gluings(n, gluings)
        if not euler_mode:
            skeleton = tri.skeleton()
            assert skeleton.connected  # fresh tetrahedra only enter via gluings
            if spec.finite and (not skeleton.valid or skeleton.ideal):
                return
            if spec.orientable:
                assert skeleton.orientable  # the parity pruning is exact
            if spec.closed:
                assert not skeleton.has_boundary_faces
        found.add(encode(tri))

    def recurse(used: int) -> None:
        slot = next(
            (s for s in range(4 * used) if adj[s] is None),
            None,
        )
        if slot is None:
            if used == n:
                emit()
            return  # a closed-off partial component can never reach n
        if not spec.closed:
            adj[slot] = -1
            recurse(used)
            adj[slot] = None
        t, f = divmod(slot, 4)
        choices = [
            (s, _GLUE_TABLE[(f, s % 4)])
            for s in range(slot + 1, 4 * used)
            if adj[s] is None
        ]
        if used < n:
            choices.append((4 * used, [_FRESH_ENTRY[f]]))
        for partner, entries in choices:
            u = partner // 4
            next_used = max(used, u + 1)
            for perm, orient_rel, joins, corner_joins in entries:
                mark_o = orient.mark()
                mark_e = edges.mark()
                mark_c = corners.mark()
                ok = True
                if spec.orientable:
                    ok = orient.union(t, u, orient_rel)
                if ok and spec.finite:
                    for ef, eg, parity in joins:
                        if not edges.union(6 * t + ef, 6 * u + eg, parity):
                            ok = False
                            break
                if ok and euler_mode:
                    for a, b in corner_joins:
                        corners.union(4 * t + a, 4 * u + b, 0)
                if ok:
                    adj[slot] = partner
                    adj[partner] = slot
                    gluings.append((t, f, u, perm))
                    recurse(next_used)
                    gluings.pop()
                    adj[slot] = None
                    adj[partner] = None
                orient.rollback(mark_o)
                edges.rollback(mark_e)
                corners.rollback(mark_c)

    recurse(1)
    return sorted(found)
