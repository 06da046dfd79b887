"""Local triangulation moves with exact safety conditions.

Every move is described by a :class:`MoveKind` instance — a kind name plus
the index of the orbit (or tetrahedron) it acts on.  ``test_move`` checks
the safety conditions without touching the triangulation, ``perform_move``
returns a rewritten copy, and ``enumerate_moves`` lists every safe instance.

The rewriting engine replaces a small region of tetrahedra by a new one.
A region is given by frames that name each old tetrahedron's vertices with
abstract labels; new tetrahedra are tuples of those labels.  Faces shared
between new tetrahedra are glued by matching labels, outer faces of the old
region are re-attached to the new tetrahedra the same way, and flattened
face pairs are resolved by chasing gluings through the region until they
exit (or reach the boundary).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .perm4 import EDGE_INDEX, FACE_VERTICES, Perm, compose, inverse
from .skeleton import Skeleton, edge_fan
from .triangulation import PreconditionError, Triangulation

PACHNER23 = "Pachner23"
PACHNER32 = "Pachner32"
FOURFOUR = "FourFour"
TWOZEROVERTEX = "TwoZeroVertex"
TWOZEROEDGE = "TwoZeroEdge"
TWOONEEDGE = "TwoOneEdge"
BOOKOPEN = "BookOpen"
BOOKCLOSE = "BookClose"
SHELL = "Shell"
COLLAPSEEDGE = "CollapseEdge"

#: All move kinds in canonical enumeration order.
ALL_KINDS = (
    PACHNER23,
    PACHNER32,
    FOURFOUR,
    TWOZEROVERTEX,
    TWOZEROEDGE,
    TWOONEEDGE,
    BOOKOPEN,
    BOOKCLOSE,
    SHELL,
    COLLAPSEEDGE,
)

#: Tetrahedron-count change for every kind of fixed arity.  An edge collapse
#: removes one tetrahedron per unit of edge degree and is handled separately.
MOVE_DELTAS = {
    PACHNER23: 1,
    PACHNER32: -1,
    FOURFOUR: 0,
    TWOZEROVERTEX: -2,
    TWOZEROEDGE: -2,
    TWOONEEDGE: -1,
    BOOKOPEN: 0,
    BOOKCLOSE: 0,
    SHELL: -1,
}

_KINDS_ON_FACES = frozenset({PACHNER23, BOOKOPEN})
_KINDS_ON_EDGES = frozenset(
    {PACHNER32, FOURFOUR, TWOZEROEDGE, TWOONEEDGE, BOOKCLOSE, COLLAPSEEDGE}
)
_KINDS_ON_VERTICES = frozenset({TWOZEROVERTEX})
_KINDS_ON_TETRAHEDRA = frozenset({SHELL})


@dataclass(frozen=True)
class MoveKind:
    """One concrete move: a kind plus the orbit or tetrahedron it targets.

    ``location`` is a face orbit index for Pachner23/BookOpen, an edge orbit
    index for Pachner32/FourFour/TwoZeroEdge/TwoOneEdge/BookClose/
    CollapseEdge, a vertex orbit index for TwoZeroVertex, and a tetrahedron
    index for Shell.  ``axis`` selects one of the two alternative diagonals
    of a FourFour move; ``end`` selects the edge endpoint of a TwoOneEdge
    move.  Both must be 0 for every other kind.
    """

    kind: str
    location: int
    axis: int = 0
    end: int = 0

    def __str__(self) -> str:
        extra = ""
        if self.kind == FOURFOUR:
            extra = f"/axis{self.axis}"
        elif self.kind == TWOONEEDGE:
            extra = f"/end{self.end}"
        return f"{self.kind}({self.location}{extra})"


@dataclass(frozen=True)
class CollapseOutcome:
    """Result of :func:`collapse_edge`: a pass flag and the new triangulation."""

    ok: bool
    result: Triangulation | None = None


class CollapseGraph:
    """Union-find cycle detector over orbit nodes plus one boundary node.

    Arcs are added with merge-or-reject semantics: ``add_arc`` returns False
    exactly when the arc would close a cycle (including self-loops).  Union
    by size keeps each operation at O(log n) without path compression.
    """

    def __init__(self, orbit_count: int):
        self.boundary_node = orbit_count
        self._parent = list(range(orbit_count + 1))
        self._size = [1] * (orbit_count + 1)

    def find(self, node: int) -> int:
        while self._parent[node] != node:
            node = self._parent[node]
        return node

    def add_arc(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True


# ---------------------------------------------------------------------------
# Region rewriting engine


def _swap(i: int, j: int) -> Perm:
    perm = [0, 1, 2, 3]
    perm[i], perm[j] = perm[j], perm[i]
    return tuple(perm)


def _plan_by_names(frames, attach_slots, new_names):
    """Derive gluings among new tetrahedra and attachments for outer faces.

    ``frames`` maps each old tetrahedron to a 4-tuple naming its vertices.
    Every face is identified by its set of three vertex names; a name-set
    shared by two new tetrahedra becomes an internal gluing, and each slot
    in ``attach_slots`` is matched to the unique new face with the same
    name-set.
    """
    face_of_new: dict = {}
    for j, names in enumerate(new_names):
        for g in range(4):
            key = frozenset(names[k] for k in range(4) if k != g)
            face_of_new.setdefault(key, []).append((j, g))
    new_gluings = []
    for key, hits in sorted(face_of_new.items(), key=lambda kv: kv[1][0]):
        if len(hits) == 2:
            (j1, g1), (j2, g2) = hits
            pos = {name: k for k, name in enumerate(new_names[j2])}
            perm = tuple(
                g2 if k == g1 else pos[new_names[j1][k]] for k in range(4)
            )
            new_gluings.append((j1, g1, j2, perm))
        elif len(hits) > 2:
            raise RuntimeError("ambiguous face name-set in move construction")
    attach = []
    for t, f in attach_slots:
        frame = frames[t]
        key = frozenset(frame[v] for v in range(4) if v != f)
        hits = face_of_new.get(key, [])
        if len(hits) != 1:
            raise RuntimeError("outer face does not match a unique new face")
        j, g = hits[0]
        local_of = {name: v for v, name in enumerate(frame)}
        psi = tuple(
            f if k == g else local_of[new_names[j][k]] for k in range(4)
        )
        attach.append((t, f, j, psi))
    return new_gluings, attach


def _rebuild(tri, removed, new_count, new_gluings, attach, folds):
    """Replace the ``removed`` tetrahedra by ``new_count`` fresh ones.

    ``new_gluings``: (j1, g1, j2, perm) gluings among new tetrahedra, perm
    mapping tetrahedron-j1 labels to j2 labels.  ``attach``: (t, f, j, psi)
    marks old outer slot (t, f) as carried by new tetrahedron j, with psi
    mapping j's labels to t's.  ``folds``: (slot_a, slot_b, chi) flattens
    two old outer faces onto each other, chi mapping a's labels to b's.

    Surviving tetrahedra keep their relative order and are followed by the
    new ones.  Gluings that pointed into the region are re-routed by
    following attachments and fold chains until they exit.
    """
    removed_set = set(removed)
    attach_map = {(t, f): (j, psi) for (t, f, j, psi) in attach}
    fold_map = {}
    for slot_a, slot_b, chi in folds:
        fold_map[slot_a] = (slot_b, chi)
        fold_map[slot_b] = (slot_a, inverse(chi))

    limit = 4 * len(removed_set) + 4

    def exit_of(slot, acc):
        """Resolve an entry into the region at ``slot`` to its final target.

        ``acc`` maps the labels of the originating tetrahedron to the labels
        of ``slot``'s tetrahedron.  Returns ('new', j, perm), ('old', t,
        perm), or ('boundary',).
        """
        for _ in range(limit):
            if slot in attach_map:
                j, psi = attach_map[slot]
                return ("new", j, compose(inverse(psi), acc))
            if slot not in fold_map:
                raise RuntimeError(f"unclassified region face {slot}")
            other, chi = fold_map[slot]
            acc = compose(chi, acc)
            partner = tri.adjacent(*other)
            if partner is None:
                return ("boundary",)
            u, q = partner
            acc = compose(q, acc)
            if u not in removed_set:
                return ("old", u, acc)
            slot = (u, q[other[1]])
        raise RuntimeError("fold resolution does not terminate")

    survivors = [t for t in range(tri.size) if t not in removed_set]
    final_of_old = {t: i for i, t in enumerate(survivors)}
    base = len(survivors)

    specs: dict = {}

    def record(s1, s2, perm):
        for s, t, p in ((s1, s2, perm), (s2, s1, inverse(perm))):
            if s in specs:
                if specs[s] != (t, p):
                    raise RuntimeError("inconsistent gluing resolution")
            else:
                specs[s] = (t, p)

    def final_target(res, face):
        kind = res[0]
        if kind == "boundary":
            return None
        _, idx, acc = res
        tet = final_of_old[idx] if kind == "old" else base + idx
        return (tet, acc[face]), acc

    for t in survivors:
        for f in range(4):
            partner = tri.adjacent(t, f)
            if partner is None:
                continue
            u, q = partner
            here = (final_of_old[t], f)
            if u not in removed_set:
                record(here, (final_of_old[u], q[f]), q)
                continue
            res = exit_of((u, q[f]), q)
            target = final_target(res, f)
            if target is not None:
                record(here, target[0], target[1])

    for j1, g1, j2, perm in new_gluings:
        record((base + j1, g1), (base + j2, perm[g1]), perm)

    for (t, f), (j, psi) in attach_map.items():
        g = psi.index(f)
        partner = tri.adjacent(t, f)
        if partner is None:
            continue
        u, q = partner
        if u not in removed_set:
            perm = compose(q, psi)
            record((base + j, g), (final_of_old[u], perm[g]), perm)
            continue
        res = exit_of((u, q[f]), compose(q, psi))
        target = final_target(res, g)
        if target is not None:
            record((base + j, g), target[0], target[1])

    result = Triangulation(base + new_count)
    done = set()
    for s1, (s2, perm) in specs.items():
        if s1 in done:
            continue
        done.add(s1)
        done.add(s2)
        result.glue(s1[0], s1[1], s2[0], perm)
    return result


def _fan_names(frames):
    """Name the fan around an edge: ends X, Y and equator V0..V(d-1)."""
    d = len(frames)
    names = {}
    for i, (t, phi) in enumerate(frames):
        frame = [None] * 4
        frame[phi[0]] = "X"
        frame[phi[1]] = "Y"
        frame[phi[2]] = ("V", i)
        frame[phi[3]] = ("V", (i + 1) % d)
        names[t] = tuple(frame)
    return names


# ---------------------------------------------------------------------------
# Per-kind safety tests and constructions


def _test_pachner23(tri, sk, m):
    fc = sk.faces[m.location]
    if fc.boundary:
        return False
    (t0, _), (t1, _) = fc.slots
    return t0 != t1


def _build_pachner23(tri, sk, m):
    (t0, f0), (t1, f1) = sk.faces[m.location].slots
    u, q = tri.adjacent(t0, f0)
    assert u == t1 and q[f0] == f1
    frame0, frame1 = [None] * 4, [None] * 4
    frame0[f0] = "X"
    frame1[f1] = "Y"
    base = FACE_VERTICES[f0]
    for i, v in enumerate(base):
        frame0[v] = ("A", i)
        frame1[q[v]] = ("A", i)
    frames = {t0: tuple(frame0), t1: tuple(frame1)}
    new_names = [
        ("X", "Y", ("A", i), ("A", (i + 1) % 3)) for i in range(3)
    ]
    attach_slots = [(t0, v) for v in base] + [(t1, q[v]) for v in base]
    new_gluings, attach = _plan_by_names(frames, attach_slots, new_names)
    return _rebuild(tri, [t0, t1], 3, new_gluings, attach, [])


def _fan_region(tri, sk, m, degree):
    """Shared location test for moves on an internal edge of given degree."""
    ec = sk.edges[m.location]
    if ec.boundary or ec.reversed_identification or ec.degree != degree:
        return None
    tets = [t for t, _ in ec.slots]
    if len(set(tets)) != degree:
        return None
    frames, closed = edge_fan(tri, *ec.slots[0])
    assert closed and len(frames) == degree
    return frames


def _test_pachner32(tri, sk, m):
    return _fan_region(tri, sk, m, 3) is not None


def _build_pachner32(tri, sk, m):
    frames = _fan_region(tri, sk, m, 3)
    names = _fan_names(frames)
    new_names = [
        ("X", ("V", 0), ("V", 1), ("V", 2)),
        ("Y", ("V", 0), ("V", 1), ("V", 2)),
    ]
    attach_slots = [(t, phi[0]) for t, phi in frames] + [
        (t, phi[1]) for t, phi in frames
    ]
    new_gluings, attach = _plan_by_names(names, attach_slots, new_names)
    return _rebuild(
        tri, [t for t, _ in frames], 2, new_gluings, attach, []
    )


def _test_fourfour(tri, sk, m):
    return _fan_region(tri, sk, m, 4) is not None


def _build_fourfour(tri, sk, m):
    frames = _fan_region(tri, sk, m, 4)
    names = _fan_names(frames)
    if m.axis == 0:
        pole_a, pole_b = ("V", 0), ("V", 2)
        cycle = [("V", 1), "X", ("V", 3), "Y"]
    else:
        pole_a, pole_b = ("V", 1), ("V", 3)
        cycle = [("V", 2), "X", ("V", 0), "Y"]
    new_names = [
        (pole_a, pole_b, cycle[i], cycle[(i + 1) % 4]) for i in range(4)
    ]
    attach_slots = [(t, phi[0]) for t, phi in frames] + [
        (t, phi[1]) for t, phi in frames
    ]
    new_gluings, attach = _plan_by_names(names, attach_slots, new_names)
    return _rebuild(
        tri, [t for t, _ in frames], 4, new_gluings, attach, []
    )


def _test_twozerovertex(tri, sk, m):
    vc = sk.vertices[m.location]
    if vc.degree != 2 or vc.link.link_class != "sphere":
        return False
    (t0, v0), (t1, v1) = vc.slots
    if t0 == t1:
        return False
    # The region must be a genuine pillow: the two tetrahedra joined to
    # each other along all three faces around the vertex.  (A sphere link
    # of degree two can also arise from self-foldings, which this move
    # does not apply to.)
    for f in range(4):
        if f == v0:
            continue
        partner = tri.adjacent(t0, f)
        if partner is None or partner[0] != t1:
            return False
    adj0 = tri.adjacent(t0, v0)
    adj1 = tri.adjacent(t1, v1)
    if adj0 is None and adj1 is None:
        return False
    if adj0 is not None and (adj0[0], adj0[1][v0]) == (t1, v1):
        return False
    return True


def _pillow_fold(tri, t0, v0, t1, v1):
    """Vertex map between the two tetrahedra of a degree-2 vertex pillow."""
    chi = [None] * 4
    chi[v0] = v1
    for f in range(4):
        if f == v0:
            continue
        u, q = tri.adjacent(t0, f)
        assert u == t1 and q[v0] == v1
        for w in range(4):
            if w in (v0, f):
                continue
            if chi[w] is None:
                chi[w] = q[w]
            else:
                assert chi[w] == q[w], "vertex link is not a two-triangle sphere"
    return tuple(chi)


def _build_twozerovertex(tri, sk, m):
    (t0, v0), (t1, v1) = sk.vertices[m.location].slots
    chi = _pillow_fold(tri, t0, v0, t1, v1)
    return _rebuild(tri, [t0, t1], 0, [], [], [((t0, v0), (t1, v1), chi)])


def _two_zero_edge_slots(frames):
    (t0, p0), (t1, p1) = frames
    rim0 = EDGE_INDEX[p0[2]][p0[3]]
    rim1 = EDGE_INDEX[p1[2]][p1[3]]
    outer = [(t0, p0[0]), (t1, p1[0]), (t0, p0[1]), (t1, p1[1])]
    return rim0, rim1, outer


def _test_twozeroedge(tri, sk, m):
    frames = _fan_region(tri, sk, m, 2)
    if frames is None:
        return False
    (t0, _), (t1, _) = frames
    rim0, rim1, outer = _two_zero_edge_slots(frames)
    e0, e1 = sk.edge_index[t0][rim0], sk.edge_index[t1][rim1]
    if e0 == e1:
        return False
    if sk.edges[e0].boundary and sk.edges[e1].boundary:
        return False
    partner = {}
    for slot in outer:
        pr = tri.adjacent(*slot)
        partner[slot] = None if pr is None else (pr[0], pr[1][slot[1]])
    for a, b in ((outer[0], outer[1]), (outer[2], outer[3])):
        if partner[a] == b:
            return False  # the two faces on one side are identified
        if partner[a] is None and partner[b] is None:
            return False  # both faces on one side are boundary
    inside = [s for s in outer if partner[s] in outer]
    if len(inside) == 4:
        return False  # all four faces identified in pairs
    if len(inside) == 2:
        rest = [s for s in outer if s not in inside]
        if all(partner[s] is None for s in rest):
            return False  # two identified, other two boundary
    return True


def _build_twozeroedge(tri, sk, m):
    frames = _fan_region(tri, sk, m, 2)
    (t0, p0), (t1, p1) = frames
    chi = [None] * 4
    for k, img in zip(range(4), (0, 1, 3, 2)):
        chi[p0[k]] = p1[img]
    chi = tuple(chi)
    folds = [
        ((t0, p0[0]), (t1, p1[0]), chi),
        ((t0, p0[1]), (t1, p1[1]), chi),
    ]
    return _rebuild(tri, [t0, t1], 0, [], [], folds)


def _two_one_parts(tri, sk, m):
    """Locate the fold tetrahedron and its neighbour for a TwoOneEdge move."""
    frames = _fan_region(tri, sk, m, 1)
    if frames is None:
        return None
    t, phi = frames[0]
    a_l = phi[m.end]
    b_l = phi[1 - m.end]
    partner = tri.adjacent(t, b_l)
    if partner is None or partner[0] == t:
        return None
    u, r = partner
    return t, u, r, a_l, b_l, phi[2], phi[3]


def _test_twooneedge(tri, sk, m):
    parts = _two_one_parts(tri, sk, m)
    if parts is None:
        return False
    t, u, r, a_l, b_l, p_l, q_l = parts
    apex = r[b_l]
    e1 = sk.edge_index[u][EDGE_INDEX[apex][r[p_l]]]
    e2 = sk.edge_index[u][EDGE_INDEX[apex][r[q_l]]]
    if e1 == e2:
        return False
    if sk.edges[e1].boundary and sk.edges[e2].boundary:
        return False
    flat_a, flat_b = (u, r[q_l]), (u, r[p_l])
    pr = tri.adjacent(*flat_a)
    if pr is not None and (pr[0], pr[1][flat_a[1]]) == flat_b:
        return False
    if tri.adjacent(*flat_a) is None and tri.adjacent(*flat_b) is None:
        return False
    return True


def _build_twooneedge(tri, sk, m):
    t, u, r, a_l, b_l, p_l, q_l = _two_one_parts(tri, sk, m)
    frame_t, frame_u = [None] * 4, [None] * 4
    for local, name in ((a_l, "X"), (b_l, "Y"), (p_l, "P"), (q_l, "Q")):
        frame_t[local] = name
    for local, name in (
        (r[a_l], "X"),
        (r[b_l], "R"),
        (r[p_l], "P"),
        (r[q_l], "Q"),
    ):
        frame_u[local] = name
    frames = {t: tuple(frame_t), u: tuple(frame_u)}
    new_names = [("Y", "R", "P", "Q")]
    attach_slots = [(t, a_l), (u, r[a_l])]
    new_gluings, attach = _plan_by_names(frames, attach_slots, new_names)
    # The new tetrahedron folds its (Y,R,P) face onto its (Y,R,Q) face,
    # recreating a degree-one edge on Y-R.
    new_gluings.append((0, 3, 0, (0, 1, 3, 2)))
    folds = [((u, r[q_l]), (u, r[p_l]), _swap(r[p_l], r[q_l]))]
    return _rebuild(tri, [t, u], 1, new_gluings, attach, folds)


def _face_edge_orbits(sk, t, f):
    return [
        sk.edge_index[t][EDGE_INDEX[a][b]]
        for a, b in combinations(FACE_VERTICES[f], 2)
    ]


def _test_bookopen(tri, sk, m):
    fc = sk.faces[m.location]
    if fc.boundary:
        return False
    t, f = fc.slots[0]
    on_boundary = [o for o in _face_edge_orbits(sk, t, f) if sk.edges[o].boundary]
    return len(on_boundary) == 2 and on_boundary[0] != on_boundary[1]


def _perform_bookopen(tri, sk, m):
    t, f = sk.faces[m.location].slots[0]
    result = tri.copy()
    result.unglue(t, f)
    return result


def _book_close_parts(tri, sk, m):
    ec = sk.edges[m.location]
    if not ec.boundary or ec.reversed_identification:
        return None
    frames, closed = edge_fan(tri, *ec.slots[0])
    assert not closed
    t_first, phi_first = frames[0]
    t_last, phi_last = frames[-1]
    s0 = (t_first, phi_first[3])
    s1 = (t_last, phi_last[2])
    if s0 == s1:
        return None
    return s0, s1, phi_first, phi_last


def _test_bookclose(tri, sk, m):
    parts = _book_close_parts(tri, sk, m)
    if parts is None:
        return False
    (t0, f0), (t1, f1), phi0, phi1 = parts
    w0 = sk.vertex_index[t0][phi0[2]]
    w1 = sk.vertex_index[t1][phi1[3]]
    if w0 == w1:
        return False
    for comp in sk.boundary_components:
        if (t0, f0) in comp.face_slots:
            return len(comp.face_slots) > 2
    raise AssertionError("boundary face missing from boundary components")


def _perform_bookclose(tri, sk, m):
    (t0, f0), (t1, _), phi0, phi1 = _book_close_parts(tri, sk, m)
    perm = [None] * 4
    for k, img in zip(range(4), (0, 1, 3, 2)):
        perm[phi0[k]] = phi1[img]
    result = tri.copy()
    result.glue(t0, f0, t1, tuple(perm))
    return result


def _test_shell(tri, sk, m):
    t = m.location
    open_faces = [f for f in range(4) if tri.adjacent(t, f) is None]
    k = len(open_faces)
    if k == 3:
        return True
    if k == 2:
        b1, b2 = open_faces
        hinge = sk.edge_index[t][EDGE_INDEX[b1][b2]]
        if sk.edges[hinge].boundary:
            return False
        f1, f2 = (f for f in range(4) if f not in open_faces)
        u, q = tri.adjacent(t, f1)
        return (u, q[f1]) != (t, f2)
    if k == 1:
        apex = open_faces[0]
        if sk.vertices[sk.vertex_index[t][apex]].on_boundary:
            return False
        orbits = {
            sk.edge_index[t][EDGE_INDEX[apex][w]] for w in range(4) if w != apex
        }
        return len(orbits) == 3
    return False


def _perform_shell(tri, sk, m):
    t = m.location
    result = tri.copy()
    for f in range(4):
        if result.adjacent(t, f) is not None:
            result.unglue(t, f)
    result.remove_tetrahedra([t])
    return result


def _collapse_conditions(tri, sk, ec):
    if ec.boundary or ec.reversed_identification:
        return False
    va, vb = ec.endpoints
    if va == vb:
        return False
    tets = [t for t, _ in ec.slots]
    if len(set(tets)) != len(tets):
        return False
    if sk.vertices[va].on_boundary and sk.vertices[vb].on_boundary:
        return False
    frames, _ = edge_fan(tri, *ec.slots[0])

    edge_graph = CollapseGraph(len(sk.edges))
    for o, other in enumerate(sk.edges):
        if other.boundary:
            edge_graph.add_arc(edge_graph.boundary_node, o)
    for t, phi in frames:
        upper = sk.edge_index[t][EDGE_INDEX[phi[0]][phi[2]]]
        lower = sk.edge_index[t][EDGE_INDEX[phi[1]][phi[2]]]
        if not edge_graph.add_arc(upper, lower):
            return False

    face_graph = CollapseGraph(len(sk.faces))
    for o, fc in enumerate(sk.faces):
        if fc.boundary:
            face_graph.add_arc(face_graph.boundary_node, o)
    for t, phi in frames:
        if not face_graph.add_arc(
            sk.face_index[t][phi[1]], sk.face_index[t][phi[0]]
        ):
            return False
    return True


def _build_collapse(tri, sk, m):
    ec = sk.edges[m.location]
    frames, _ = edge_fan(tri, *ec.slots[0])
    folds = [
        ((t, phi[1]), (t, phi[0]), _swap(phi[0], phi[1])) for t, phi in frames
    ]
    return _rebuild(tri, [t for t, _ in frames], 0, [], [], folds)


# ---------------------------------------------------------------------------
# Public interface

_TESTS = {
    PACHNER23: _test_pachner23,
    PACHNER32: _test_pachner32,
    FOURFOUR: _test_fourfour,
    TWOZEROVERTEX: _test_twozerovertex,
    TWOZEROEDGE: _test_twozeroedge,
    TWOONEEDGE: _test_twooneedge,
    BOOKOPEN: _test_bookopen,
    BOOKCLOSE: _test_bookclose,
    SHELL: _test_shell,
    COLLAPSEEDGE: lambda tri, sk, m: _collapse_conditions(tri, sk, sk.edges[m.location]),
}

_PERFORMS = {
    PACHNER23: _build_pachner23,
    PACHNER32: _build_pachner32,
    FOURFOUR: _build_fourfour,
    TWOZEROVERTEX: _build_twozerovertex,
    TWOZEROEDGE: _build_twozeroedge,
    TWOONEEDGE: _build_twooneedge,
    BOOKOPEN: _perform_bookopen,
    BOOKCLOSE: _perform_bookclose,
    SHELL: _perform_shell,
    COLLAPSEEDGE: _build_collapse,
}


def _location_count(sk: Skeleton, tri: Triangulation, kind: str) -> int:
    if kind in _KINDS_ON_FACES:
        return len(sk.faces)
    if kind in _KINDS_ON_EDGES:
        return len(sk.edges)
    if kind in _KINDS_ON_VERTICES:
        return len(sk.vertices)
    return tri.size


def _validate(tri: Triangulation, sk: Skeleton, m: MoveKind) -> None:
    if m.kind not in _TESTS:
        raise ValueError(f"unknown move kind: {m.kind!r}")
    if not 0 <= m.location < _location_count(sk, tri, m.kind):
        raise ValueError(f"location out of range for {m.kind}: {m.location}")
    if m.kind == FOURFOUR:
        if m.axis not in (0, 1):
            raise ValueError(f"FourFour axis must be 0 or 1, got {m.axis}")
    elif m.axis != 0:
        raise ValueError(f"{m.kind} takes no axis parameter")
    if m.kind == TWOONEEDGE:
        if m.end not in (0, 1):
            raise ValueError(f"TwoOneEdge end must be 0 or 1, got {m.end}")
    elif m.end != 0:
        raise ValueError(f"{m.kind} takes no end parameter")


def test_move(tri: Triangulation, m: MoveKind) -> bool:
    """True when the move's safety conditions hold.  Read-only.

    Raises ValueError when the location index or the axis/end parameter
    does not fit the kind.  Locations where the move is undefined (wrong
    degree, boundary edge for a collapse, and so on) return False.
    """
    sk = tri.skeleton()
    _validate(tri, sk, m)
    return _TESTS[m.kind](tri, sk, m)


def perform_move(tri: Triangulation, m: MoveKind) -> Triangulation:
    """Apply a safe move and return the rewritten triangulation.

    The input is never mutated.  Unsafe moves are refused with
    :class:`PreconditionError`.
    """
    sk = tri.skeleton()
    _validate(tri, sk, m)
    if not _TESTS[m.kind](tri, sk, m):
        raise PreconditionError(f"unsafe move refused: {m}")
    return _PERFORMS[m.kind](tri, sk, m)


def enumerate_moves(tri: Triangulation, kinds=None) -> list[MoveKind]:
    """Every safe move instance on ``tri``, in canonical order.

    ``kinds`` restricts the search to the given kind names (default: all).
    """
    sk = tri.skeleton()
    if not sk.valid:
        raise PreconditionError("moves are defined on valid triangulations only")
    if kinds is None:
        selected = ALL_KINDS
    else:
        unknown = set(kinds) - set(ALL_KINDS)
        if unknown:
            raise ValueError(f"unknown move kinds: {sorted(unknown)}")
        selected = [k for k in ALL_KINDS if k in kinds]
    found = []
    for kind in selected:
        for location in range(_location_count(sk, tri, kind)):
            if kind == FOURFOUR:
                candidates = [MoveKind(kind, location, axis=a) for a in (0, 1)]
            elif kind == TWOONEEDGE:
                candidates = [MoveKind(kind, location, end=e) for e in (0, 1)]
            else:
                candidates = [MoveKind(kind, location)]
            for m in candidates:
                if _TESTS[kind](tri, sk, m):
                    found.append(m)
    return found


def collapse_edge(
    tri: Triangulation, edge_orbit: int, dry_run: bool = False
) -> CollapseOutcome:
    """Collapse an internal edge joining two distinct vertices.

    Checks that (1) the incident tetrahedra are all distinct, (2) the edge's
    endpoints are not both on the boundary, and that the (3) edge-pair and
    (4) face-pair graphs around the edge are acyclic.  On success (and not
    ``dry_run``) removes one tetrahedron per unit of edge degree, merging
    the endpoint vertices.
    """
    sk = tri.skeleton()
    if not 0 <= edge_orbit < len(sk.edges):
        raise ValueError(f"edge orbit out of range: {edge_orbit}")
    ec = sk.edges[edge_orbit]
    if ec.boundary:
        raise PreconditionError("boundary edge collapse is not supported")
    va, vb = ec.endpoints
    if va == vb:
        raise PreconditionError("edge must join two distinct vertices")
    if not _collapse_conditions(tri, sk, ec):
        return CollapseOutcome(False)
    if dry_run:
        return CollapseOutcome(True)
    return CollapseOutcome(
        True, _build_collapse(tri, sk, MoveKind(COLLAPSEEDGE, edge_orbit))
    )
