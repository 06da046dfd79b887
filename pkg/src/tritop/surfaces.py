"""Normal and almost normal surfaces in generalised triangulations.

A surface in normal position meets each tetrahedron in elementary pieces:
four *triangle* types (one cutting off each vertex) and three
*quadrilateral* types (one separating each pair of opposite edges).  An
*almost normal* surface additionally allows three *octagon* types, indexed
like the quadrilateral types by the pair of opposite edges they run
parallel to; an octagon meets those two edges twice each and the other
four edges once.

Four coordinate systems record such surfaces as non-negative integer
vectors, grouped per tetrahedron:

* ``standard``    -- 7 entries: 4 triangles then 3 quadrilaterals;
* ``quad``        -- 3 entries: the quadrilaterals alone;
* ``standardan``  -- 10 entries: triangles, quadrilaterals, octagons;
* ``quadoct``     -- 6 entries: quadrilaterals then octagons.

A vector describes an embedded surface exactly when it satisfies the
matching equations of its system (pieces on both sides of each internal
face agree arc type by arc type, see :func:`matching_system`), carries at
most one quadrilateral or octagon type per tetrahedron, and -- for the
almost normal systems proper -- at most one octagon in total; the last
restriction is deliberately *not* folded into the vector constraints, so
octagon counts stay visible to callers.

Quadrilateral coordinates determine the surface up to vertex-linking
components: :func:`reconstruct_standard` recovers the unique completion
without any, and :func:`analyze` reads off components, orientability and
Euler characteristic by assembling the pieces into a cell complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cone import ConeProblem, enumerate_extreme_rays
from .perm4 import EDGES, FACE_VERTICES, PAIR_TYPE, Perm, compose
from .skeleton import edge_fan
from .triangulation import PreconditionError, Triangulation

__all__ = [
    "STANDARD",
    "QUAD",
    "STANDARD_AN",
    "QUAD_OCT",
    "SurfaceVector",
    "SurfaceAnalysis",
    "matching_system",
    "enumerate_vertex_surfaces",
    "vertex_link_vector",
    "euler_coefficients",
    "analyze",
    "reconstruct_standard",
    "find_nontrivial_normal_sphere",
    "find_almost_normal_sphere",
    "crush",
]

STANDARD = "standard"
QUAD = "quad"
STANDARD_AN = "standardan"
QUAD_OCT = "quadoct"

#: system -> (entries per tetrahedron, triangle offset, quad offset,
#: octagon offset); ``None`` marks an absent block.
_LAYOUTS: dict[str, tuple[int, int | None, int, int | None]] = {
    STANDARD: (7, 0, 4, None),
    QUAD: (3, None, 0, None),
    STANDARD_AN: (10, 0, 4, 7),
    QUAD_OCT: (6, None, 0, 3),
}


def _layout(system: str) -> tuple[int, int | None, int, int | None]:
    try:
        return _LAYOUTS[system]
    except KeyError:
        raise ValueError(
            f"unknown coordinate system {system!r}; expected one of "
            f"{sorted(_LAYOUTS)}"
        ) from None


def _zero_side(v: int, k: int) -> bool:
    """True when vertex ``v`` lies in the pair of type ``k`` containing 0."""
    return v == 0 or PAIR_TYPE[0][v] == k


def _pair_partner(k: int, v: int) -> int:
    """The vertex paired with ``v`` by pair type ``k``."""
    return next(w for w in range(4) if w != v and PAIR_TYPE[v][w] == k)


# ---------------------------------------------------------------------------
# canonical boundary cycles of the pieces
#
# Each piece type carries a fixed traversal of its boundary, one directed
# side per (face, cut vertex) incidence, with corners named by the
# tetrahedron edge they lie on.  Consecutive sides share a corner, so each
# table is a genuine boundary orientation; comparing directions across a
# face gluing then detects orientation-reversing identifications.


def _corner(x: int, y: int) -> frozenset[int]:
    return frozenset((x, y))


def _triangle_sides() -> tuple[dict[int, tuple[frozenset[int], frozenset[int]]], ...]:
    out = []
    for v in range(4):
        a, b, c = (w for w in range(4) if w != v)
        out.append(
            {
                c: (_corner(v, a), _corner(v, b)),
                a: (_corner(v, b), _corner(v, c)),
                b: (_corner(v, c), _corner(v, a)),
            }
        )
    return tuple(out)


def _quad_sides() -> tuple[dict[int, tuple[frozenset[int], frozenset[int]]], ...]:
    out = []
    for k in range(3):
        p = k + 1
        q, r = (w for w in (1, 2, 3) if w != p)
        out.append(
            {
                p: (_corner(0, q), _corner(0, r)),
                q: (_corner(0, r), _corner(p, r)),
                0: (_corner(p, r), _corner(p, q)),
                r: (_corner(p, q), _corner(0, q)),
            }
        )
    return tuple(out)


def _oct_sides() -> tuple[
    dict[tuple[int, int], tuple[frozenset[int], frozenset[int]]], ...
]:
    # Keyed by (face, cut vertex): an octagon meets each face in two arcs.
    out = []
    for k in range(3):
        p = k + 1
        q, r = (w for w in (1, 2, 3) if w != p)
        out.append(
            {
                (r, 0): (_corner(0, p), _corner(0, q)),
                (p, q): (_corner(0, q), _corner(q, r)),
                (0, q): (_corner(q, r), _corner(p, q)),
                (r, p): (_corner(p, q), _corner(0, p)),
                (q, p): (_corner(0, p), _corner(p, r)),
                (0, r): (_corner(p, r), _corner(q, r)),
                (p, r): (_corner(q, r), _corner(0, r)),
                (q, 0): (_corner(0, r), _corner(0, p)),
            }
        )
    return tuple(out)


_TRI_SIDES = _triangle_sides()
_QUAD_SIDES = _quad_sides()
_OCT_SIDES = _oct_sides()


# ---------------------------------------------------------------------------
# vectors


@dataclass(frozen=True, eq=False)
class SurfaceVector:
    """A surface in one of the four coordinate systems.

    Construction validates everything: entry count and non-negativity, at
    most one quadrilateral/octagon type per tetrahedron, and the matching
    equations of the system.
    """

    triangulation: Triangulation
    system: str
    coords: tuple[int, ...]

    def __post_init__(self):
        width, _tri_off, quad_off, oct_off = _layout(self.system)
        cleaned = []
        for v in self.coords:
            iv = int(v)
            if iv != v:
                raise ValueError("surface coordinates must be integers")
            cleaned.append(iv)
        object.__setattr__(self, "coords", tuple(cleaned))
        n = self.triangulation.size
        if len(self.coords) != width * n:
            raise ValueError(
                f"expected {width * n} coordinates for {n} tetrahedra in the "
                f"{self.system} system, got {len(self.coords)}"
            )
        if any(v < 0 for v in self.coords):
            raise ValueError("surface coordinates must be non-negative")
        for t in range(n):
            base = width * t
            live = sum(1 for k in range(3) if self.coords[base + quad_off + k])
            if oct_off is not None:
                live += sum(1 for k in range(3) if self.coords[base + oct_off + k])
            if live > 1:
                raise ValueError(
                    f"tetrahedron {t} carries more than one quadrilateral or "
                    "octagon type"
                )
        problem = matching_system(self.triangulation, self.system)
        for row in problem.rows:
            if sum(a * x for a, x in zip(row, self.coords)) != 0:
                raise ValueError("coordinates do not satisfy the matching equations")

    @property
    def octagon_sum(self) -> int:
        """Total octagon count (0 in the plain normal systems)."""
        width, _tri_off, _quad_off, oct_off = _layout(self.system)
        if oct_off is None:
            return 0
        return sum(
            self.coords[width * t + oct_off + k]
            for t in range(self.triangulation.size)
            for k in range(3)
        )

    def rendered(self) -> str:
        """Tabular text: per-tetrahedron groups separated by ``||``."""
        width, tri_off, quad_off, oct_off = _layout(self.system)
        groups = []
        for t in range(self.triangulation.size):
            base = width * t
            parts = []
            if tri_off is not None:
                parts.append(
                    " ".join(str(self.coords[base + tri_off + v]) for v in range(4))
                )
            parts.append(
                " ".join(str(self.coords[base + quad_off + k]) for k in range(3))
            )
            if oct_off is not None:
                parts.append(
                    " ".join(str(self.coords[base + oct_off + k]) for k in range(3))
                )
            groups.append(" ; ".join(parts))
        return " || ".join(groups)

    def __repr__(self) -> str:
        return f"SurfaceVector({self.system}: {self.rendered()})"


# ---------------------------------------------------------------------------
# matching equations


def _require_material(tri: Triangulation):
    if tri.size == 0:
        raise PreconditionError("surface coordinates need at least one tetrahedron")
    sk = tri.skeleton()
    if not sk.valid:
        raise PreconditionError("surface coordinates require a valid triangulation")
    if sk.ideal:
        raise PreconditionError("surface coordinates require material vertex links")
    return sk


def matching_system(tri: Triangulation, system: str) -> ConeProblem:
    """The matching equations of ``system``, as a cone problem.

    Triangle-bearing systems carry three equations per internal face (one
    per arc type: both sides must supply equally many arcs cutting each
    face vertex).  Quadrilateral-only systems carry one equation per
    internal edge, obtained by telescoping the arc equations around the
    edge: walking the fan of frames, each frame contributes its two
    edge-parallel pair types with opposite signs -- and octagon types with
    the signs flipped, since an octagon plays the role of a quadrilateral
    of the complementary kind on the two faces of a fan step.

    The attached pair filter enforces at most one quadrilateral/octagon
    type per tetrahedron during extreme-ray enumeration.
    """
    width, tri_off, quad_off, oct_off = _layout(system)
    if tri.size == 0:
        raise PreconditionError("surface coordinates need at least one tetrahedron")
    sk = tri.skeleton()
    cached = getattr(tri, "_matching_cache", None)
    if cached is not None and cached[0] is sk and system in cached[1]:
        return cached[1][system]
    _require_material(tri)
    dim = width * tri.size
    rows: list[tuple[int, ...]] = []
    if tri_off is not None:
        for face in sk.faces:
            if face.boundary:
                continue
            t1, f1 = face.slots[0]
            t2, p = tri.adjacent(t1, f1)
            f2 = p[f1]
            for v in FACE_VERTICES[f1]:
                w = p[v]
                row = [0] * dim
                row[width * t1 + tri_off + v] += 1
                row[width * t1 + quad_off + PAIR_TYPE[v][f1]] += 1
                row[width * t2 + tri_off + w] -= 1
                row[width * t2 + quad_off + PAIR_TYPE[w][f2]] -= 1
                if oct_off is not None:
                    for j in range(3):
                        if j != PAIR_TYPE[v][f1]:
                            row[width * t1 + oct_off + j] += 1
                        if j != PAIR_TYPE[w][f2]:
                            row[width * t2 + oct_off + j] -= 1
                rows.append(tuple(row))
    else:
        for edge in sk.edges:
            if edge.boundary:
                continue
            t0, e0 = edge.slots[0]
            frames, closed = edge_fan(tri, t0, e0)
            assert closed, "internal edge with an open fan"
            row = [0] * dim
            for t, phi in frames:
                ka = PAIR_TYPE[phi[0]][phi[2]]
                kb = PAIR_TYPE[phi[0]][phi[3]]
                row[width * t + quad_off + ka] += 1
                row[width * t + quad_off + kb] -= 1
                if oct_off is not None:
                    row[width * t + oct_off + ka] -= 1
                    row[width * t + oct_off + kb] += 1
            rows.append(tuple(row))

    masks = []
    for t in range(tri.size):
        mask = 0
        for k in range(3):
            mask |= 1 << (width * t + quad_off + k)
        if oct_off is not None:
            for k in range(3):
                mask |= 1 << (width * t + oct_off + k)
        masks.append(mask)

    def pair_filter(support1: int, support2: int) -> bool:
        union = support1 | support2
        for mask in masks:
            bits = union & mask
            if bits & (bits - 1):
                return False
        return True

    problem = ConeProblem(dim, rows, pair_filter)
    if cached is None or cached[0] is not sk:
        cached = (sk, {})
        tri._matching_cache = cached
    cached[1][system] = problem
    return problem


def enumerate_vertex_surfaces(tri: Triangulation, system: str) -> list[SurfaceVector]:
    """All vertex surfaces of the system: primitive admissible extreme rays,
    sorted ascending by coordinate vector."""
    if tri.size == 0:
        _layout(system)
        return []
    problem = matching_system(tri, system)
    return [
        SurfaceVector(tri, system, ray.vector)
        for ray in enumerate_extreme_rays(problem)
    ]


def vertex_link_vector(tri: Triangulation, vertex: int) -> SurfaceVector:
    """The standard vector with one triangle in every corner of the orbit."""
    sk = _require_material(tri)
    coords = [0] * (7 * tri.size)
    for t, v in sk.vertices[vertex].slots:
        coords[7 * t + v] += 1
    return SurfaceVector(tri, STANDARD, tuple(coords))


# ---------------------------------------------------------------------------
# geometry of a vector: arc stacks and edge crossings
#
# Parallel copies of a piece are indexed from the side of vertex 0: copy 0
# of a triangle is nearest its vertex, copy 0 of a quadrilateral or
# octagon is nearest the edge of its pair containing vertex 0.


def _arc_stack(t, f, v, coords, system):
    """Arcs cutting vertex ``v`` on face ``f`` of tetrahedron ``t``.

    Ordered from ``v`` outward; each entry is ``(piece key, directed side)``.
    """
    width, tri_off, quad_off, oct_off = _layout(system)
    base = width * t
    out = []
    for i in range(coords[base + tri_off + v]):
        out.append((("tri", t, v, i), _TRI_SIDES[v][f]))
    k0 = PAIR_TYPE[v][f]
    count = coords[base + quad_off + k0]
    if count:
        order = range(count) if _zero_side(v, k0) else range(count - 1, -1, -1)
        for i in order:
            out.append((("quad", t, k0, i), _QUAD_SIDES[k0][f]))
    if oct_off is not None:
        for j in range(3):
            if j == k0:
                continue
            count = coords[base + oct_off + j]
            if count:
                order = (
                    range(count) if _zero_side(v, j) else range(count - 1, -1, -1)
                )
                for i in order:
                    out.append((("oct", t, j, i), _OCT_SIDES[j][(f, v)]))
    return out


def _edge_crossings(t, a, b, coords, system) -> int:
    """Points of the surface on edge ``(a, b)`` of tetrahedron ``t``."""
    width, tri_off, quad_off, oct_off = _layout(system)
    par = PAIR_TYPE[a][b]
    base = width * t
    total = 0
    if tri_off is not None:
        total += coords[base + tri_off + a] + coords[base + tri_off + b]
    for k in range(3):
        if k != par:
            total += coords[base + quad_off + k]
    if oct_off is not None:
        for j in range(3):
            total += coords[base + oct_off + j] * (2 if j == par else 1)
    return total


def _edge_levels(t, a, b, coords, system):
    """Piece keys crossing edge ``(a, b)`` in order from ``a`` to ``b``.

    An edge-parallel octagon crosses twice; its copies appear as a
    palindrome (outermost copies first and last on the pair edge through
    vertex 0, innermost on the other pair edge), which is forced by the
    orderings of its arcs on the incident faces.
    """
    width, tri_off, quad_off, oct_off = _layout(system)
    par = PAIR_TYPE[a][b]
    base = width * t
    levels = []
    for i in range(coords[base + tri_off + a]):
        levels.append(("tri", t, a, i))
    for k in range(3):
        if k == par:
            continue
        count = coords[base + quad_off + k]
        if count:
            order = range(count) if _zero_side(a, k) else range(count - 1, -1, -1)
            levels.extend(("quad", t, k, i) for i in order)
    if oct_off is not None:
        for j in range(3):
            count = coords[base + oct_off + j]
            if not count:
                continue
            if j != par:
                order = range(count) if _zero_side(a, j) else range(count - 1, -1, -1)
                levels.extend(("oct", t, j, i) for i in order)
            elif a == 0:
                swing = list(range(count)) + list(range(count - 1, -1, -1))
                levels.extend(("oct", t, j, i) for i in swing)
            else:
                swing = list(range(count - 1, -1, -1)) + list(range(count))
                levels.extend(("oct", t, j, i) for i in swing)
    for i in range(coords[base + tri_off + b] - 1, -1, -1):
        levels.append(("tri", t, b, i))
    return levels


def _glued_parity(side1, p: Perm, side2) -> int:
    """0 when the glued sides traverse the shared arc in opposite
    directions (orientations compatible), 1 otherwise."""
    s1, e1 = side1
    s2, e2 = side2
    ms = frozenset(p[x] for x in s1)
    me = frozenset(p[x] for x in e1)
    if ms == s2 and me == e2:
        return 1
    if ms == e2 and me == s2:
        return 0
    raise AssertionError("glued arcs disagree on their corner edges")


class _ParityUnionFind:
    """Union-find with an orientation bit per element.

    ``union(x, y, rel)`` asserts that the parity between x and y is
    ``rel``; contradictions mark the component as conflicted (a
    non-orientable surface component).
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.offset = [0] * n
        self.conflicted = [False] * n

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        parity = 0
        for y in reversed(path):
            parity ^= self.offset[y]
            self.parent[y] = root
            self.offset[y] = parity
        return root, parity

    def union(self, x: int, y: int, rel: int) -> None:
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            if (px ^ py) != rel:
                self.conflicted[rx] = True
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
            px, py = py, px
        self.parent[ry] = rx
        self.offset[ry] = px ^ py ^ rel
        self.conflicted[rx] = self.conflicted[rx] or self.conflicted[ry]
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class SurfaceAnalysis:
    """Cell-complex census of a surface vector.

    Components are ordered by their smallest piece in the fixed piece
    numbering (tetrahedra in order; triangles, quadrilaterals, octagons
    within each).
    """

    euler_char: int
    components: int
    component_euler_chars: tuple[int, ...]
    component_orientable: tuple[bool, ...]
    is_vertex_linking: bool
    two_sphere_flags: tuple[bool, ...]

    @property
    def is_two_sphere(self) -> bool:
        """True when the whole surface is one two-sphere component."""
        return self.components == 1 and self.euler_char == 2


def euler_coefficients(tri: Triangulation, system: str) -> tuple[int, ...]:
    """Weights making Euler characteristic a linear function of coordinates.

    Each piece contributes +1 (a face of the complex).  Each surface edge
    is an arc in some face of the triangulation, counted once per face
    orbit; each surface vertex is a crossing point on some edge of the
    triangulation, counted once per edge orbit.  Only triangle-bearing
    systems admit such weights.
    """
    width, tri_off, quad_off, oct_off = _layout(system)
    if tri_off is None:
        raise PreconditionError(
            "Euler characteristic is not linear in quadrilateral-only systems"
        )
    sk = _require_material(tri)
    weights = [1] * (width * tri.size)
    for edge in sk.edges:
        t, e = edge.slots[0]
        a, b = EDGES[e]
        par = PAIR_TYPE[a][b]
        base = width * t
        weights[base + tri_off + a] += 1
        weights[base + tri_off + b] += 1
        for k in range(3):
            if k != par:
                weights[base + quad_off + k] += 1
        if oct_off is not None:
            for j in range(3):
                weights[base + oct_off + j] += 2 if j == par else 1
    for face in sk.faces:
        t, f = face.slots[0]
        base = width * t
        for v in FACE_VERTICES[f]:
            weights[base + tri_off + v] -= 1
            weights[base + quad_off + PAIR_TYPE[v][f]] -= 1
            if oct_off is not None:
                for j in range(3):
                    if j != PAIR_TYPE[v][f]:
                        weights[base + oct_off + j] -= 1
    return tuple(weights)


def analyze(tri: Triangulation, surface: SurfaceVector) -> SurfaceAnalysis:
    """Assemble the pieces of ``surface`` and report its topology.

    Requires a triangle-bearing system (reconstruct quad-style vectors
    first).  The cell-complex Euler characteristic is cross-checked
    against the linear functional of :func:`euler_coefficients`.
    """
    if surface.triangulation is not tri:
        raise PreconditionError("surface was built on a different triangulation")
    width, tri_off, quad_off, oct_off = _layout(surface.system)
    if tri_off is None:
        raise PreconditionError(
            "analysis needs triangle coordinates; use reconstruct_standard first"
        )
    problem = matching_system(tri, surface.system)
    coords = surface.coords
    for row in problem.rows:
        if sum(a * x for a, x in zip(row, coords)) != 0:
            raise ValueError(
                "surface no longer satisfies the matching equations; "
                "the triangulation changed after the vector was built"
            )
    sk = tri.skeleton()

    pieces = []
    for t in range(tri.size):
        base = width * t
        for v in range(4):
            pieces.extend(("tri", t, v, i) for i in range(coords[base + tri_off + v]))
        for k in range(3):
            pieces.extend(
                ("quad", t, k, i) for i in range(coords[base + quad_off + k])
            )
        if oct_off is not None:
            for k in range(3):
                pieces.extend(
                    ("oct", t, k, i) for i in range(coords[base + oct_off + k])
                )
    piece_id = {key: i for i, key in enumerate(pieces)}
    uf = _ParityUnionFind(len(pieces))

    arc_pieces = []  # one representative piece per surface edge
    for face in sk.faces:
        t1, f1 = face.slots[0]
        if face.boundary:
            for v in FACE_VERTICES[f1]:
                for key, _side in _arc_stack(t1, f1, v, coords, surface.system):
                    arc_pieces.append(piece_id[key])
            continue
        t2, p = tri.adjacent(t1, f1)
        f2 = p[f1]
        for v in FACE_VERTICES[f1]:
            stack1 = _arc_stack(t1, f1, v, coords, surface.system)
            stack2 = _arc_stack(t2, f2, p[v], coords, surface.system)
            assert len(stack1) == len(stack2), "matching equations violated"
            for (key1, side1), (key2, side2) in zip(stack1, stack2):
                uf.union(
                    piece_id[key1], piece_id[key2], _glued_parity(side1, p, side2)
                )
                arc_pieces.append(piece_id[key1])

    corner_pieces = []  # one representative piece per surface vertex
    for edge in sk.edges:
        counts = {
            _edge_crossings(t, *EDGES[e], coords, surface.system)
            for t, e in edge.slots
        }
        assert len(counts) == 1, "edge crossing counts disagree between slots"
        t, e = edge.slots[0]
        a, b = EDGES[e]
        levels = _edge_levels(t, a, b, coords, surface.system)
        assert len(levels) == counts.pop()
        corner_pieces.extend(piece_id[key] for key in levels)

    grouped: dict[int, list[int]] = {}
    for i in range(len(pieces)):
        grouped.setdefault(uf.find(i)[0], []).append(i)
    roots = sorted(grouped, key=lambda r: grouped[r][0])
    component_of = {r: c for c, r in enumerate(roots)}
    faces_per = [len(grouped[r]) for r in roots]
    edges_per = [0] * len(roots)
    vertices_per = [0] * len(roots)
    for i in arc_pieces:
        edges_per[component_of[uf.find(i)[0]]] += 1
    for i in corner_pieces:
        vertices_per[component_of[uf.find(i)[0]]] += 1

    chis = tuple(
        vertices_per[c] - edges_per[c] + faces_per[c] for c in range(len(roots))
    )
    orientable = tuple(not uf.conflicted[r] for r in roots)
    for chi, ok in zip(chis, orientable):
        assert chi != 2 or ok, "a closed component of characteristic 2 must orient"
    euler = sum(chis)
    assert euler == sum(
        w * x for w, x in zip(euler_coefficients(tri, surface.system), coords)
    ), "cell complex disagrees with the Euler functional"

    linking = all(
        coords[width * t + off + k] == 0
        for t in range(tri.size)
        for off in ((quad_off,) if oct_off is None else (quad_off, oct_off))
        for k in range(3)
    )
    return SurfaceAnalysis(
        euler_char=euler,
        components=len(roots),
        component_euler_chars=chis,
        component_orientable=orientable,
        is_vertex_linking=linking,
        two_sphere_flags=tuple(chi == 2 for chi in chis),
    )


# ---------------------------------------------------------------------------
# reconstruction from quadrilateral coordinates


def reconstruct_standard(tri: Triangulation, surface: SurfaceVector) -> SurfaceVector:
    """Complete a quad-style vector to triangle coordinates.

    Propagates corner counts across internal faces (the arc equations
    determine each difference of adjacent triangle coordinates), then
    shifts each vertex orbit so its minimum is zero -- the unique
    completion with no vertex-linking component.  Raises ``ValueError``
    when no consistent completion exists.
    """
    if surface.triangulation is not tri:
        raise PreconditionError("surface was built on a different triangulation")
    if surface.system == QUAD:
        target = STANDARD
    elif surface.system == QUAD_OCT:
        target = STANDARD_AN
    else:
        raise PreconditionError(
            "reconstruction expects quad or quadoct coordinates"
        )
    width_in, _, quad_in, oct_in = _layout(surface.system)
    width_out, tri_out, quad_out, oct_out = _layout(target)
    sk = _require_material(tri)
    n = tri.size
    coords = [0] * (width_out * n)
    for t in range(n):
        for k in range(3):
            coords[width_out * t + quad_out + k] = surface.coords[
                width_in * t + quad_in + k
            ]
        if oct_in is not None:
            for k in range(3):
                coords[width_out * t + oct_out + k] = surface.coords[
                    width_in * t + oct_in + k
                ]

    def transverse_arcs(t: int, v: int, f: int) -> int:
        k = PAIR_TYPE[v][f]
        total = coords[width_out * t + quad_out + k]
        if oct_out is not None:
            total += sum(
                coords[width_out * t + oct_out + j] for j in range(3) if j != k
            )
        return total

    for orbit in sk.vertices:
        values: dict[tuple[int, int], int] = {orbit.slots[0]: 0}
        queue = [orbit.slots[0]]
        while queue:
            t1, v = queue.pop()
            for f in range(4):
                if f == v:
                    continue
                gluing = tri.adjacent(t1, f)
                if gluing is None:
                    continue
                t2, p = gluing
                v2, f2 = p[v], p[f]
                value = (
                    values[(t1, v)]
                    + transverse_arcs(t1, v, f)
                    - transverse_arcs(t2, v2, f2)
                )
                seen = values.get((t2, v2))
                if seen is None:
                    values[(t2, v2)] = value
                    queue.append((t2, v2))
                elif seen != value:
                    raise ValueError(
                        "quadrilateral coordinates admit no consistent completion"
                    )
        assert set(values) == set(orbit.slots)
        shift = -min(values.values())
        for (t, v), value in values.items():
            coords[width_out * t + tri_out + v] = value + shift
    return SurfaceVector(tri, target, tuple(coords))


# ---------------------------------------------------------------------------
# sphere searches


def find_nontrivial_normal_sphere(tri: Triangulation) -> SurfaceVector | None:
    """A connected normal two-sphere that is not vertex linking, or None.

    Searches the quadrilateral vertex surfaces in canonical order; a
    surface of positive Euler characteristic is either the sphere itself
    or a one-sided projective plane whose double is one.  A ``None``
    answer certifies that every normal sphere is vertex linking.
    """
    if tri.size == 0:
        return None
    sk = tri.skeleton()
    if not sk.valid or not sk.closed:
        raise PreconditionError("sphere search requires a closed valid triangulation")
    for candidate in enumerate_vertex_surfaces(tri, QUAD):
        rebuilt = reconstruct_standard(tri, candidate)
        report = analyze(tri, rebuilt)
        assert report.components == 1, "vertex surfaces are connected"
        if report.euler_char == 2:
            return rebuilt
        if report.euler_char == 1:
            doubled = SurfaceVector(
                tri, QUAD, tuple(2 * x for x in candidate.coords)
            )
            rebuilt = reconstruct_standard(tri, doubled)
            if analyze(tri, rebuilt).is_two_sphere:
                return rebuilt
    return None


def find_almost_normal_sphere(tri: Triangulation) -> SurfaceVector | None:
    """A connected almost normal two-sphere with exactly one octagon.

    Searches the quad-octagon vertex surfaces of a closed one-vertex
    triangulation.  In a triangulation with no non-trivial normal sphere,
    a ``None`` answer certifies the manifold is not the three-sphere.
    """
    sk = tri.skeleton() if tri.size else None
    if sk is None or not sk.valid or not sk.closed:
        raise PreconditionError(
            "almost normal sphere search requires a closed valid triangulation"
        )
    if len(sk.vertices) != 1:
        raise PreconditionError(
            "almost normal sphere search requires a one-vertex triangulation"
        )
    for candidate in enumerate_vertex_surfaces(tri, QUAD_OCT):
        if candidate.octagon_sum != 1:
            continue
        rebuilt = reconstruct_standard(tri, candidate)
        report = analyze(tri, rebuilt)
        if report.components == 1 and report.euler_char == 2:
            return rebuilt
    return None


# ---------------------------------------------------------------------------
# crushing


def crush(tri: Triangulation, surface: SurfaceVector) -> Triangulation:
    """Crush a standard normal surface to a point, destructively.

    Every tetrahedron containing a quadrilateral is deleted.  A surviving
    face glues to whatever its trace through the deleted region reaches:
    inside a deleted tetrahedron the two faces through each edge of the
    quadrilateral's pair partition flatten onto each other (the
    transposition of the pair containing the entry face), and the walk
    continues through the neighbouring gluing until it lands on a
    survivor.  Topologically this collapses each sphere component to a
    point and undoes the resulting connected sums; it is meaningful for
    sphere and disc surfaces.
    """
    if surface.triangulation is not tri:
        raise PreconditionError("surface was built on a different triangulation")
    if surface.system != STANDARD:
        raise PreconditionError("crushing expects standard coordinates")
    sk = tri.skeleton()
    if not sk.valid or not sk.closed:
        raise PreconditionError("crushing requires a closed valid triangulation")

    quad_type: list[int | None] = []
    for t in range(tri.size):
        live = [k for k in range(3) if surface.coords[7 * t + 4 + k]]
        quad_type.append(live[0] if live else None)
    if all(k is None for k in quad_type):
        raise PreconditionError(
            "surface has no quadrilaterals (vertex linking); nothing to crush"
        )

    survivors = [t for t in range(tri.size) if quad_type[t] is None]
    index = {t: i for i, t in enumerate(survivors)}
    step_limit = 8 * tri.size
    seen: set[tuple[int, int]] = set()
    gluings: list[tuple[int, int, int, Perm]] = []
    for t in survivors:
        for f in range(4):
            if (index[t], f) in seen:
                continue
            u, acc = tri.adjacent(t, f)
            g = acc[f]
            steps = 0
            while quad_type[u] is not None:
                partner = _pair_partner(quad_type[u], g)
                sigma = list(range(4))
                sigma[g], sigma[partner] = partner, g
                acc = compose(tuple(sigma), acc)
                g = partner
                u2, p2 = tri.adjacent(u, g)
                acc = compose(p2, acc)
                g = p2[g]
                u = u2
                steps += 1
                if steps > step_limit:
                    raise PreconditionError(
                        "crushed region does not flatten onto the survivors"
                    )
            other = (index[u], g)
            if other in seen:
                raise PreconditionError(
                    "crushed region folds a face onto an already glued one"
                )
            seen.add((index[t], f))
            seen.add(other)
            gluings.append((index[t], f, index[u], acc))

    out = Triangulation.from_gluings(len(survivors), gluings)
    assert out.size < tri.size
    return out
