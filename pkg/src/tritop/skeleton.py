"""Skeleta of generalised triangulations.

The *skeleton* of a triangulation collects the orbits of tetrahedron
vertices, edges and faces under the gluing identifications, classifies each
vertex link, assembles the boundary surface, and derives the global flags
(valid / closed / ideal / orientable / connected).

Vertex links are built from *corner triangles*: tetrahedron ``t`` truncated
near vertex ``v`` leaves a small triangle whose own vertices sit on the
edges {v,w} (one for each of the other three labels ``w``) and whose sides
lie in the faces of ``t`` containing ``v``.  Face gluings match these
corner triangles side to side, so the collection of corners forms a closed
or bounded surface — the link of the vertex orbit.  Its topology drives
most of the structure theory:

* every link a sphere and no unglued faces  ->  closed 3-manifold;
* a link which is a torus, Klein bottle or higher-genus closed surface ->
  an ideal vertex (cusp);
* a link with boundary that is not a disc, or an edge glued to itself in
  reverse  ->  the quotient space is not a 3-manifold (invalid).
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm4 import EDGES, EDGE_INDEX, FACE_VERTICES, Perm, sign
from .triangulation import Triangulation, _boundary_edge_partner

LINK_SPHERE = "sphere"
LINK_DISC = "disc"
LINK_TORUS = "torus"
LINK_KLEIN = "klein"
LINK_OTHER = "other"


@dataclass(frozen=True)
class LinkInfo:
    """Topology of one vertex link."""

    link_class: str
    euler: int
    orientable: bool
    has_boundary: bool
    triangles: int

    @property
    def valid(self) -> bool:
        """A link is legal when it is closed or a disc."""
        return (not self.has_boundary) or self.link_class == LINK_DISC

    @property
    def ideal(self) -> bool:
        """Closed but not a sphere: the vertex is an ideal point."""
        return (not self.has_boundary) and self.link_class != LINK_SPHERE


@dataclass(frozen=True)
class VertexClass:
    index: int
    slots: tuple[tuple[int, int], ...]  # (tetrahedron, vertex)
    link: LinkInfo

    @property
    def degree(self) -> int:
        return len(self.slots)

    @property
    def on_boundary(self) -> bool:
        return self.link.has_boundary


@dataclass(frozen=True)
class EdgeClass:
    index: int
    slots: tuple[tuple[int, int], ...]  # (tetrahedron, edge number)
    #: Direction of each slot relative to slots[0] (0 = same, 1 = reversed).
    parities: tuple[int, ...]
    boundary: bool
    #: True when the edge is identified with itself in reverse (invalid).
    reversed_identification: bool
    #: Vertex orbit at each end, in the ascending-label order of slots[0].
    endpoints: tuple[int, int]

    @property
    def degree(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class FaceClass:
    index: int
    slots: tuple[tuple[int, int], ...]  # one slot (boundary) or two (internal)

    @property
    def boundary(self) -> bool:
        return len(self.slots) == 1


@dataclass(frozen=True)
class BoundaryComponent:
    index: int
    face_slots: tuple[tuple[int, int], ...]
    euler: int
    orientable: bool


@dataclass
class Skeleton:
    """All orbit data of a triangulation, plus derived global flags."""

    vertices: list[VertexClass]
    edges: list[EdgeClass]
    faces: list[FaceClass]
    boundary_components: list[BoundaryComponent]
    #: Orbit index of vertex v of tetrahedron t.
    vertex_index: list[list[int]]
    #: Orbit index of edge e of tetrahedron t.
    edge_index: list[list[int]]
    #: Direction of edge slot (t,e) relative to its orbit root (0/1).
    edge_parity: list[list[int]]
    #: Orbit index of face f of tetrahedron t.
    face_index: list[list[int]]
    connected: bool
    orientable: bool
    valid: bool
    closed: bool
    ideal: bool
    has_boundary_faces: bool

    @property
    def f_vector(self) -> tuple[int, int, int, int]:
        n_tets = len(self.vertex_index)
        return (len(self.vertices), len(self.edges), len(self.faces), n_tets)


@dataclass(frozen=True)
class Classification:
    """Global yes/no structure flags of a triangulation."""

    valid: bool
    closed: bool
    ideal: bool
    orientable: bool
    connected: bool
    has_boundary_faces: bool


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True


def compute_skeleton(tri: Triangulation) -> Skeleton:
    n = tri.size

    # ---------------------------------------------------------- faces
    face_index = [[-1] * 4 for _ in range(n)]
    faces: list[FaceClass] = []
    for t in range(n):
        for f in range(4):
            if face_index[t][f] != -1:
                continue
            idx = len(faces)
            g = tri.adjacent(t, f)
            if g is None:
                slots: tuple[tuple[int, int], ...] = ((t, f),)
            else:
                u, p = g
                slots = ((t, f), (u, p[f]))
                face_index[u][p[f]] = idx
            face_index[t][f] = idx
            faces.append(FaceClass(idx, slots))

    # ---------------------------------------------------------- edges
    # Identifications: each gluing matches the three edges of the glued face.
    edge_nbrs: list[list[tuple[int, int]]] = [[] for _ in range(6 * n)]
    for t, f, u, p in tri.gluings():
        fv = FACE_VERTICES[f]
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = fv[i], fv[j]
                e1 = 6 * t + EDGE_INDEX[a][b]
                pa, pb = p[a], p[b]
                e2 = 6 * u + EDGE_INDEX[pa][pb]
                flip = 0 if pa < pb else 1
                edge_nbrs[e1].append((e2, flip))
                edge_nbrs[e2].append((e1, flip))

    edge_index = [[-1] * 6 for _ in range(n)]
    edge_parity = [[0] * 6 for _ in range(n)]
    edge_orbit_slots: list[list[tuple[int, int]]] = []
    edge_reversed: list[bool] = []
    for root in range(6 * n):
        t0, e0 = divmod(root, 6)
        if edge_index[t0][e0] != -1:
            continue
        idx = len(edge_orbit_slots)
        slots_list: list[tuple[int, int]] = []
        bad = False
        edge_index[t0][e0] = idx
        edge_parity[t0][e0] = 0
        stack = [root]
        slots_list.append((t0, e0))
        while stack:
            cur = stack.pop()
            ct, ce = divmod(cur, 6)
            cp = edge_parity[ct][ce]
            for nbr, flip in edge_nbrs[cur]:
                nt, ne = divmod(nbr, 6)
                want = cp ^ flip
                if edge_index[nt][ne] == -1:
                    edge_index[nt][ne] = idx
                    edge_parity[nt][ne] = want
                    slots_list.append((nt, ne))
                    stack.append(nbr)
                elif edge_parity[nt][ne] != want:
                    bad = True
        edge_orbit_slots.append(slots_list)
        edge_reversed.append(bad)

    # ---------------------------------------------------------- vertices
    vuf = _UnionFind(4 * n)
    for t, f, u, p in tri.gluings():
        for v in FACE_VERTICES[f]:
            vuf.union(4 * t + v, 4 * u + p[v])
    vertex_index = [[-1] * 4 for _ in range(n)]
    vertex_orbit_slots: list[list[tuple[int, int]]] = []
    root_to_orbit: dict[int, int] = {}
    for t in range(n):
        for v in range(4):
            r = vuf.find(4 * t + v)
            if r not in root_to_orbit:
                root_to_orbit[r] = len(vertex_orbit_slots)
                vertex_orbit_slots.append([])
            idx = root_to_orbit[r]
            vertex_index[t][v] = idx
            vertex_orbit_slots[idx].append((t, v))

    # ------------------------------------------------- edge endpoints
    edges: list[EdgeClass] = []
    for idx, slots_list in enumerate(edge_orbit_slots):
        t0, e0 = slots_list[0]
        a, b = EDGES[e0]
        boundary = any(
            tri.adjacent(t, f) is None
            for (t, e) in slots_list
            for f in range(4)
            if f not in EDGES[e]
        )
        edges.append(
            EdgeClass(
                index=idx,
                slots=tuple(slots_list),
                parities=tuple(edge_parity[t][e] for (t, e) in slots_list),
                boundary=boundary,
                reversed_identification=edge_reversed[idx],
                endpoints=(vertex_index[t0][a], vertex_index[t0][b]),
            )
        )

    # ---------------------------------------------------------- links
    # Link-vertex identifications: global union-find over triples (t, v, w).
    def lv_id(t: int, v: int, w: int) -> int:
        return 16 * t + 4 * v + w

    lvuf = _UnionFind(16 * n)
    for t, f, u, p in tri.gluings():
        fv = FACE_VERTICES[f]
        for v in fv:
            for w in fv:
                if w != v:
                    lvuf.union(lv_id(t, v, w), lv_id(u, p[v], p[w]))

    vertices: list[VertexClass] = []
    for idx, corners in enumerate(vertex_orbit_slots):
        n_faces = len(corners)
        # Orientation propagation over corner triangles.
        corner_pos = {c: i for i, c in enumerate(corners)}
        signs = [0] * n_faces
        orientable = True
        for start in range(n_faces):
            if signs[start]:
                continue
            signs[start] = 1
            stack = [start]
            while stack:
                ci = stack.pop()
                t, v = corners[ci]
                for f in range(4):
                    if f == v:
                        continue
                    g = tri.adjacent(t, f)
                    if g is None:
                        continue
                    u, p = g
                    cj = corner_pos[(u, p[v])]
                    flip = _link_side_flip(v, f, p)
                    want = -signs[ci] if flip else signs[ci]
                    if signs[cj] == 0:
                        signs[cj] = want
                        stack.append(cj)
                    elif signs[cj] != want:
                        orientable = False
        boundary_sides = sum(
            1
            for (t, v) in corners
            for f in range(4)
            if f != v and tri.adjacent(t, f) is None
        )
        n_edges = (3 * n_faces + boundary_sides) // 2
        roots = {
            lvuf.find(lv_id(t, v, w)) for (t, v) in corners for w in range(4) if w != v
        }
        n_verts = len(roots)
        euler = n_verts - n_edges + n_faces
        has_boundary = boundary_sides > 0
        if not has_boundary:
            if euler == 2:
                link_class = LINK_SPHERE
            elif euler == 0:
                link_class = LINK_TORUS if orientable else LINK_KLEIN
            else:
                link_class = LINK_OTHER
        else:
            link_class = LINK_DISC if euler == 1 else LINK_OTHER
        vertices.append(
            VertexClass(
                index=idx,
                slots=tuple(corners),
                link=LinkInfo(
                    link_class=link_class,
                    euler=euler,
                    orientable=orientable,
                    has_boundary=has_boundary,
                    triangles=n_faces,
                ),
            )
        )

    # --------------------------------------------- global orientability
    orientable = True
    eps = [0] * n
    for start in range(n):
        if eps[start] or n == 0:
            continue
        eps[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.adjacent(t, f)
                if g is None:
                    continue
                u, p = g
                want = -sign(p) * eps[t]
                if eps[u] == 0:
                    eps[u] = want
                    stack.append(u)
                elif eps[u] != want:
                    orientable = False

    # ------------------------------------------------ boundary surface
    bslots = tri.boundary_slots()
    boundary_components: list[BoundaryComponent] = []
    if bslots:
        bpos = {s: i for i, s in enumerate(bslots)}
        buf = _UnionFind(len(bslots))
        cuf = _UnionFind(3 * len(bslots))  # corners: (slot, position in face)

        def corner_id(slot_i: int, v: int) -> int:
            t, f = bslots[slot_i]
            return 3 * slot_i + FACE_VERTICES[f].index(v)

        pair_arcs: list[tuple[int, int, bool]] = []  # (slot_i, slot_j, flip)
        seen_edge_sides: set[tuple[int, int, int]] = set()
        for i, (t, f) in enumerate(bslots):
            fv = FACE_VERTICES[f]
            for k in range(3):
                x, y = fv[k], fv[(k + 1) % 3]
                e = EDGE_INDEX[x][y]
                if (t, f, e) in seen_edge_sides:
                    continue
                w, g, acc = _boundary_edge_partner(tri, t, f, x, y)
                j = bpos[(w, g)]
                seen_edge_sides.add((t, f, e))
                seen_edge_sides.add((w, g, EDGE_INDEX[acc[x]][acc[y]]))
                buf.union(i, j)
                cuf.union(corner_id(i, x), corner_id(j, acc[x]))
                cuf.union(corner_id(i, y), corner_id(j, acc[y]))
                flip = _boundary_side_flip(f, x, y, g, acc)
                pair_arcs.append((i, j, flip))
        # Orientability per component via sign propagation.
        adjacency: list[list[tuple[int, bool]]] = [[] for _ in bslots]
        for i, j, flip in pair_arcs:
            adjacency[i].append((j, flip))
            adjacency[j].append((i, flip))
        bsign = [0] * len(bslots)
        comp_orient: dict[int, bool] = {}
        for start in range(len(bslots)):
            if bsign[start]:
                continue
            root = buf.find(start)
            comp_orient.setdefault(root, True)
            bsign[start] = 1
            stack = [start]
            while stack:
                i = stack.pop()
                for j, flip in adjacency[i]:
                    want = -bsign[i] if flip else bsign[i]
                    if bsign[j] == 0:
                        bsign[j] = want
                        stack.append(j)
                    elif bsign[j] != want:
                        comp_orient[root] = False
        comp_faces: dict[int, list[tuple[int, int]]] = {}
        comp_edges: dict[int, int] = {}
        for i, slot in enumerate(bslots):
            comp_faces.setdefault(buf.find(i), []).append(slot)
        for i, j, _flip in pair_arcs:
            r = buf.find(i)
            comp_edges[r] = comp_edges.get(r, 0) + 1
        comp_verts: dict[int, set[int]] = {}
        for i in range(len(bslots)):
            r = buf.find(i)
            s = comp_verts.setdefault(r, set())
            for k in range(3):
                s.add(cuf.find(3 * i + k))
        for cidx, root in enumerate(sorted(comp_faces, key=lambda r: comp_faces[r][0])):
            fcount = len(comp_faces[root])
            ecount = comp_edges.get(root, 0)
            vcount = len(comp_verts[root])
            boundary_components.append(
                BoundaryComponent(
                    index=cidx,
                    face_slots=tuple(sorted(comp_faces[root])),
                    euler=vcount - ecount + fcount,
                    orientable=comp_orient[root],
                )
            )

    # ------------------------------------------------------------ flags
    has_boundary_faces = bool(bslots)
    valid = not any(e.reversed_identification for e in edges) and all(
        v.link.valid for v in vertices
    )
    closed = (not has_boundary_faces) and all(
        v.link.link_class == LINK_SPHERE for v in vertices
    )
    ideal = any(v.link.ideal for v in vertices)
    connected = tri.is_connected()

    return Skeleton(
        vertices=vertices,
        edges=edges,
        faces=faces,
        boundary_components=boundary_components,
        vertex_index=vertex_index,
        edge_index=edge_index,
        edge_parity=edge_parity,
        face_index=face_index,
        connected=connected,
        orientable=orientable,
        valid=valid,
        closed=closed,
        ideal=ideal,
        has_boundary_faces=has_boundary_faces,
    )


def _ref_direction(cycle: tuple[int, int, int], x: int, y: int) -> bool:
    """True if x -> y follows the cyclic orientation (c0, c1, c2)."""
    c0, c1, c2 = cycle
    return (x, y) in ((c0, c1), (c1, c2), (c2, c0))


def _link_side_flip(v: int, f: int, p: Perm) -> bool:
    """Orientation comparison for glued corner-triangle sides.

    Corner of vertex v in one tetrahedron meets the corner of p[v] across
    face f.  Returns True when the two reference orientations induce the
    *same* direction on the shared side (so coherent orientations must take
    opposite signs).
    """
    ws = tuple(w for w in range(4) if w != v)
    # Side on face f omits the link vertex w == f; ref direction from cycle.
    others = tuple(w for w in ws if w != f)
    x, y = others
    if not _ref_direction(ws, x, y):
        x, y = y, x
    vv = p[v]
    ws2 = tuple(w for w in range(4) if w != vv)
    return _ref_direction(ws2, p[x], p[y])


def _boundary_side_flip(f: int, x: int, y: int, g: int, acc: Perm) -> bool:
    """Orientation comparison for boundary faces meeting along an edge.

    True when the ascending-order orientations of the two boundary faces
    induce the same direction on their shared edge.
    """
    fv1 = FACE_VERTICES[f]
    if not _ref_direction(fv1, x, y):
        x, y = y, x
    fv2 = FACE_VERTICES[g]
    return _ref_direction(fv2, acc[x], acc[y])


def classify(tri: Triangulation) -> Classification:
    """Global structure flags of a triangulation."""
    sk = tri.skeleton()
    return Classification(
        valid=sk.valid,
        closed=sk.closed,
        ideal=sk.ideal,
        orientable=sk.orientable,
        connected=sk.connected,
        has_boundary_faces=sk.has_boundary_faces,
    )


def vertex_link(tri: Triangulation, vertex_orbit: int) -> LinkInfo:
    """Link of the given vertex orbit."""
    sk = tri.skeleton()
    if not 0 <= vertex_orbit < len(sk.vertices):
        raise ValueError(f"vertex orbit {vertex_orbit} out of range")
    return sk.vertices[vertex_orbit].link


def edge_fan(
    tri: Triangulation, tet: int, edge: int
) -> tuple[list[tuple[int, Perm]], bool]:
    """Frames of the tetrahedron fan around an edge.

    Returns ``(frames, closed)``.  Each frame is ``(t, phi)`` where ``phi``
    sends the reference positions (0, 1) to the two edge endpoints in the
    labels of ``t``, position 2 to the previous equator vertex and position
    3 to the next one.  Walking from frame ``i`` exits through the face
    numbered ``phi[2]`` (opposite the previous vertex) into frame ``i+1``.

    For an internal edge the frames form a closed cycle (``closed`` True)
    of length equal to the edge degree.  For a boundary edge they form an
    open path covering the fan: the unglued faces are face ``phi[3]`` of
    ``frames[0]`` and face ``phi[2]`` of ``frames[-1]``.
    """
    a, b = EDGES[edge]
    c, d = (v for v in range(4) if v not in (a, b))
    start: tuple[int, Perm] = (tet, (a, b, c, d))
    frames = [start]
    cur_t, phi = start
    limit = 6 * tri.size + 1
    closed = False
    while True:
        g = tri.adjacent(cur_t, phi[2])
        if g is None:
            break
        u, p = g
        cur_t, phi = u, (p[phi[0]], p[phi[1]], p[phi[3]], p[phi[2]])
        if (cur_t, phi) == start:
            closed = True
            break
        frames.append((cur_t, phi))
        if len(frames) > limit:
            raise ValueError("edge fan does not close up: edge reversed or corrupt")
    if closed:
        return frames, True
    back: list[tuple[int, Perm]] = []
    cur_t, phi = start
    while True:
        g = tri.adjacent(cur_t, phi[3])
        if g is None:
            break
        u, p = g
        # Stepping backward uses the same frame update as stepping forward;
        # only the exit face differs (phi[3] instead of phi[2]).
        cur_t, phi = u, (p[phi[0]], p[phi[1]], p[phi[3]], p[phi[2]])
        back.append((cur_t, phi))
        if len(back) > limit:
            raise ValueError("edge fan does not close up: edge reversed or corrupt")
    back.reverse()
    return back + frames, False
