"""Generalised triangulations of 3-manifolds.

A triangulation is a finite set of abstract tetrahedra, numbered 0..n-1,
together with a set of *gluings*: each gluing identifies a face of one
tetrahedron with a face of a (possibly equal) tetrahedron via an affine
bijection, recorded as a permutation of the four vertex labels.  Faces left
unglued form the boundary.  A face may never be glued directly to itself,
but all other self-identifications are allowed, which is what makes the
triangulations "generalised": vertices, edges and faces of a single
tetrahedron may become identified in the quotient space.

Gluings are stored involutively: if ``adjacent(t, f) == (u, p)`` then
``adjacent(u, p[f]) == (t, inverse(p))``, where the permutation ``p`` maps
vertex labels of tetrahedron ``t`` to labels of ``u`` (and hence face ``f``
of ``t`` onto face ``p[f]`` of ``u``).

Text format
-----------

:meth:`Triangulation.to_text` and :meth:`Triangulation.from_text` exchange a
human-readable table.  The first line is ``tets N``; then one line per
tetrahedron holding four whitespace-separated fields for its faces in the
order 012, 013, 023, 123 (i.e. face indices 3, 2, 1, 0).  Each field is
either ``-`` for a boundary face or ``u(xyz)``, meaning the face is glued to
tetrahedron ``u`` with its vertices, in ascending order, sent to ``x``,
``y``, ``z``.  For example the closed two-tetrahedron triangulation::

    tets 2
    1(012) 1(013) 1(132) 1(032)
    0(012) 0(013) 0(132) 0(032)

glues face 023 of tetrahedron 0 to face 132 of tetrahedron 1, i.e. sends
vertices 0, 2, 3 to 1, 3, 2 respectively.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Optional

from .perm4 import (
    FACE_VERTICES,
    IDENTITY,
    PERM_INDEX,
    Perm,
    S4,
    compose,
    inverse,
)


class PreconditionError(ValueError):
    """An operation was invoked on a triangulation outside its domain.

    Raised when input is structurally fine but the requested computation is
    not applicable (e.g. sphere recognition on a bounded triangulation).
    """


Gluing = Optional[tuple[int, Perm]]

#: Face indices in the column order used by the text format: the columns
#: list faces 012, 013, 023, 123, whose opposite vertices are 3, 2, 1, 0.
TEXT_FACE_ORDER: tuple[int, ...] = (3, 2, 1, 0)

_FIELD_RE = re.compile(r"^(\d+)\(([0-3])([0-3])([0-3])\)$")


class Triangulation:
    """A generalised triangulation, mutable via :meth:`glue` / :meth:`unglue`."""

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError("tetrahedron count must be non-negative")
        self._adj: list[list[Gluing]] = [[None] * 4 for _ in range(n)]
        self._skeleton = None  # lazily computed, reset on mutation

    # ------------------------------------------------------------------
    # basic structure

    @property
    def size(self) -> int:
        """Number of tetrahedra."""
        return len(self._adj)

    def adjacent(self, tet: int, face: int) -> Gluing:
        """Return ``(other_tet, perm)`` across the given face, or None."""
        return self._adj[tet][face]

    def is_glued(self, tet: int, face: int) -> bool:
        return self._adj[tet][face] is not None

    def boundary_slots(self) -> list[tuple[int, int]]:
        """All unglued (tetrahedron, face) slots, in lexicographic order."""
        return [
            (t, f) for t in range(self.size) for f in range(4) if self._adj[t][f] is None
        ]

    def has_boundary_faces(self) -> bool:
        return any(g is None for row in self._adj for g in row)

    def _invalidate(self) -> None:
        self._skeleton = None

    # ------------------------------------------------------------------
    # mutation

    def add_tetrahedra(self, count: int = 1) -> int:
        """Append unglued tetrahedra; return the index of the first one."""
        if count < 0:
            raise ValueError("count must be non-negative")
        first = self.size
        self._adj.extend([None] * 4 for _ in range(count))
        self._invalidate()
        return first

    def glue(self, tet: int, face: int, other: int, perm: Perm) -> None:
        """Glue ``face`` of ``tet`` to face ``perm[face]`` of ``other``.

        ``perm`` maps vertex labels of ``tet`` to labels of ``other``.  Both
        slots must currently be unglued, and a face may not be glued to
        itself (``tet == other and perm[face] == face`` is rejected).
        """
        n = self.size
        if not (0 <= tet < n and 0 <= other < n):
            raise ValueError(f"tetrahedron index out of range: {tet}, {other}")
        if not 0 <= face < 4:
            raise ValueError(f"face index out of range: {face}")
        if perm not in PERM_INDEX:
            raise ValueError(f"not a permutation of 0..3: {perm!r}")
        back = perm[face]
        if tet == other and back == face:
            raise ValueError(f"cannot glue face {face} of tetrahedron {tet} to itself")
        if self._adj[tet][face] is not None:
            raise ValueError(f"face {face} of tetrahedron {tet} is already glued")
        if self._adj[other][back] is not None:
            raise ValueError(f"face {back} of tetrahedron {other} is already glued")
        self._adj[tet][face] = (other, perm)
        self._adj[other][back] = (tet, inverse(perm))
        self._invalidate()

    def unglue(self, tet: int, face: int) -> None:
        """Remove the gluing on the given face (and its partner slot)."""
        g = self._adj[tet][face]
        if g is None:
            return
        other, perm = g
        self._adj[tet][face] = None
        self._adj[other][perm[face]] = None
        self._invalidate()

    def remove_tetrahedra(self, doomed: Iterable[int]) -> list[int]:
        """Delete the given tetrahedra and renumber the survivors downward.

        Gluings between two doomed tetrahedra are discarded; gluings between
        a survivor and a doomed tetrahedron must have been removed already
        (an exception is raised otherwise, since silently dropping them
        would desynchronise the involution).  Returns the relabelling map
        ``old index -> new index`` with -1 for removed tetrahedra.
        """
        doomed_set = set(doomed)
        if not all(0 <= t < self.size for t in doomed_set):
            raise ValueError("tetrahedron index out of range")
        relabel = []
        nxt = 0
        for t in range(self.size):
            if t in doomed_set:
                relabel.append(-1)
            else:
                relabel.append(nxt)
                nxt += 1
        for t in range(self.size):
            if t in doomed_set:
                continue
            for f in range(4):
                g = self._adj[t][f]
                if g is not None and g[0] in doomed_set:
                    raise ValueError(
                        f"face {f} of surviving tetrahedron {t} is still glued "
                        f"to doomed tetrahedron {g[0]}"
                    )
        new_adj: list[list[Gluing]] = []
        for t in range(self.size):
            if t in doomed_set:
                continue
            row: list[Gluing] = []
            for f in range(4):
                g = self._adj[t][f]
                row.append(None if g is None else (relabel[g[0]], g[1]))
            new_adj.append(row)
        self._adj = new_adj
        self._invalidate()
        return relabel

    # ------------------------------------------------------------------
    # construction helpers

    def copy(self) -> "Triangulation":
        out = Triangulation(self.size)
        out._adj = [list(row) for row in self._adj]
        return out

    @classmethod
    def from_gluings(
        cls, n: int, gluings: Iterable[tuple[int, int, int, Perm]]
    ) -> "Triangulation":
        """Build a triangulation from ``(tet, face, other, perm)`` tuples.

        Each gluing is listed once; the reverse direction is implied.
        """
        tri = cls(n)
        for tet, face, other, perm in gluings:
            tri.glue(tet, face, other, tuple(perm))  # type: ignore[arg-type]
        return tri

    def gluings(self) -> Iterator[tuple[int, int, int, Perm]]:
        """Yield each gluing once, as ``(tet, face, other, perm)``.

        The representative listed is the lexicographically smaller side.
        """
        for t in range(self.size):
            for f in range(4):
                g = self._adj[t][f]
                if g is None:
                    continue
                u, p = g
                if (u, p[f]) < (t, f):
                    continue
                if (u, p[f]) == (t, f):  # impossible: face glued to itself
                    raise AssertionError("face glued to itself")
                yield t, f, u, p

    def relabelled(self, tet_order: list[int], vertex_perms: list[Perm]) -> "Triangulation":
        """Return an isomorphic copy under an explicit relabelling.

        ``tet_order[t]`` is the new index of old tetrahedron ``t`` and
        ``vertex_perms[t]`` maps its old vertex labels to new ones.
        """
        if sorted(tet_order) != list(range(self.size)):
            raise ValueError("tet_order must be a permutation of the tetrahedra")
        out = Triangulation(self.size)
        for t, f, u, p in self.gluings():
            st, su = vertex_perms[t], vertex_perms[u]
            # New gluing from image of t to image of u: relabel both charts.
            q = compose(su, compose(p, inverse(st)))
            out.glue(tet_order[t], st[f], tet_order[u], q)
        return out

    # ------------------------------------------------------------------
    # components

    def component_partition(self) -> list[list[int]]:
        """Tetrahedron indices of each connected component, in order."""
        seen = [False] * self.size
        comps: list[list[int]] = []
        for start in range(self.size):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            stack = [start]
            while stack:
                t = stack.pop()
                for f in range(4):
                    g = self._adj[t][f]
                    if g is not None and not seen[g[0]]:
                        seen[g[0]] = True
                        comp.append(g[0])
                        stack.append(g[0])
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.size <= 1 or len(self.component_partition()) == 1

    def split_components(self) -> list["Triangulation"]:
        """Return the connected components as separate triangulations."""
        out = []
        for comp in self.component_partition():
            relabel = {old: new for new, old in enumerate(comp)}
            sub = Triangulation(len(comp))
            for t in comp:
                for f in range(4):
                    g = self._adj[t][f]
                    if g is None:
                        continue
                    u, p = g
                    if (u, p[f]) < (t, f):
                        continue
                    sub.glue(relabel[t], f, relabel[u], p)
            out.append(sub)
        return out

    # ------------------------------------------------------------------
    # comparison / presentation

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):  # mutable; identity hashing would mislead
        raise TypeError("Triangulation is not hashable; use an isomorphism signature")

    def __repr__(self) -> str:
        glued = sum(1 for row in self._adj for g in row if g is not None)
        return f"<Triangulation: {self.size} tetrahedra, {glued // 2} gluings>"

    def to_text(self) -> str:
        lines = [f"tets {self.size}"]
        for t in range(self.size):
            fields = []
            for f in TEXT_FACE_ORDER:
                g = self._adj[t][f]
                if g is None:
                    fields.append("-")
                else:
                    u, p = g
                    a, b, c = FACE_VERTICES[f]
                    fields.append(f"{u}({p[a]}{p[b]}{p[c]})")
            lines.append(" ".join(fields))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty gluing table")
        header = lines[0].split()
        if len(header) != 2 or header[0] != "tets":
            raise ValueError(f"expected header 'tets N', got {lines[0]!r}")
        try:
            n = int(header[1])
        except ValueError:
            raise ValueError(f"expected header 'tets N', got {lines[0]!r}") from None
        if n < 0 or len(lines) != n + 1:
            raise ValueError(f"expected {n} tetrahedron lines after the header")
        tri = cls(n)
        for t in range(n):
            fields = lines[t + 1].split()
            if len(fields) != 4:
                raise ValueError(f"tetrahedron {t}: expected 4 fields, got {len(fields)}")
            for f, field in zip(TEXT_FACE_ORDER, fields):
                if field == "-":
                    continue
                m = _FIELD_RE.match(field)
                if m is None:
                    raise ValueError(f"tetrahedron {t}: malformed field {field!r}")
                u = int(m.group(1))
                images = tuple(int(m.group(k)) for k in (2, 3, 4))
                if len(set(images)) != 3:
                    raise ValueError(f"tetrahedron {t}: malformed field {field!r}")
                if u >= n:
                    raise ValueError(f"tetrahedron {t}: index {u} out of range")
                a, b, c = FACE_VERTICES[f]
                perm_map = dict(zip((a, b, c), images))
                out = [-1, -1, -1, -1]
                for v, w in perm_map.items():
                    out[v] = w
                out[f] = ({0, 1, 2, 3} - set(images)).pop()
                perm: Perm = tuple(out)  # type: ignore[assignment]
                existing = tri._adj[t][f]
                if existing is not None:
                    # Already set from the partner line; verify consistency.
                    if existing != (u, perm):
                        raise ValueError(
                            f"tetrahedron {t}, face {f}: gluing disagrees with "
                            f"the partner tetrahedron's line"
                        )
                    continue
                tri.glue(t, f, u, perm)
        return tri

    # ------------------------------------------------------------------
    # skeleton access (computed in tritop.skeleton, cached here)

    def skeleton(self):
        """Return the :class:`~tritop.skeleton.Skeleton`, computing lazily."""
        if self._skeleton is None:
            from . import skeleton as _skeleton

            self._skeleton = _skeleton.compute_skeleton(self)
        return self._skeleton


def build_from_gluings(
    n: int, gluings: Iterable[tuple[int, int, int, Perm]]
) -> Triangulation:
    """Functional alias for :meth:`Triangulation.from_gluings`."""
    return Triangulation.from_gluings(n, gluings)


def cone_boundary(tri: Triangulation) -> Triangulation:
    """Cone each boundary component to a point.

    Attaches one new tetrahedron over every boundary face (apex at vertex 3,
    base 012 glued to the boundary face via the ascending-vertex map) and
    glues the new side faces to each other across the boundary edges, so
    that each boundary component becomes the cone on that surface.  The
    result has no boundary faces.  A triangulation with no boundary faces is
    returned unchanged (as a copy).
    """
    slots = tri.boundary_slots()
    if not slots:
        return tri.copy()
    skel = tri.skeleton()
    if not skel.valid:
        raise PreconditionError("cannot cone the boundary of an invalid triangulation")
    out = tri.copy()
    first = out.add_tetrahedra(len(slots))
    cone_of = {slot: first + i for i, slot in enumerate(slots)}
    base_perm: dict[tuple[int, int], Perm] = {}
    for (t, f), c in cone_of.items():
        a, b, cc = FACE_VERTICES[f]
        p = [-1, -1, -1, -1]
        p[a], p[b], p[cc], p[f] = 0, 1, 2, 3
        base_perm[(t, f)] = tuple(p)  # type: ignore[assignment]
        out.glue(t, f, c, tuple(p))  # type: ignore[arg-type]
    # Side faces: walk around each boundary edge to find the matching
    # boundary face on its other side.
    for (t, f), c in cone_of.items():
        pa = base_perm[(t, f)]
        fverts = FACE_VERTICES[f]
        for i in range(3):
            x, y = fverts[i], fverts[(i + 1) % 3]
            z = fverts[(i + 2) % 3]
            # Apex face of the cone tetrahedron over edge {x,y}: the face
            # missing the image of z.
            side = pa[z]
            if out.is_glued(c, side):
                continue
            w, g, acc = _boundary_edge_partner(tri, t, f, x, y)
            pb = base_perm[(w, g)]
            zz = next(v for v in FACE_VERTICES[g] if v not in (acc[x], acc[y]))
            q = [-1, -1, -1, -1]
            q[3] = 3
            q[pa[x]] = pb[acc[x]]
            q[pa[y]] = pb[acc[y]]
            q[pa[z]] = pb[zz]
            out.glue(c, side, cone_of[(w, g)], tuple(q))  # type: ignore[arg-type]
    return out


def _boundary_edge_partner(
    tri: Triangulation, t: int, f: int, x: int, y: int
) -> tuple[int, int, Perm]:
    """From boundary face f of tet t, walk around edge {x,y} to the boundary
    face on the edge's other side.

    Returns ``(w, g, acc)`` where the partner is face ``g`` of tetrahedron
    ``w`` and ``acc`` maps labels of ``t`` to labels of ``w``.
    """
    if tri.is_glued(t, f):
        raise ValueError("walk must start at a boundary face")
    cur_t, acc = t, IDENTITY
    exit_face = next(v for v in range(4) if v not in (f, x, y))
    while True:
        g = tri.adjacent(cur_t, exit_face)
        if g is None:
            return cur_t, exit_face, acc
        u, p = g
        acc = compose(p, acc)
        enter = p[exit_face]
        ex, ey = acc[x], acc[y]
        exit_face = next(v for v in range(4) if v not in (enter, ex, ey))
        cur_t = u


def barycentric_subdivide(tri: Triangulation) -> Triangulation:
    """Return the barycentric subdivision (24 small tetrahedra per big one).

    Small tetrahedra correspond to flags: tetrahedron ``t`` and ``pi`` in S4
    give the small tetrahedron with vertex 0 at big vertex ``pi[0]``, vertex
    1 at the midpoint of edge {pi[0],pi[1]}, vertex 2 at the centroid of the
    face spanned by {pi[0],pi[1],pi[2]}, and vertex 3 at the centre of
    ``t``.  Face i of a small tetrahedron (for i < 3) meets the small
    tetrahedron of the flag with positions i, i+1 exchanged; face 3 lies in
    the big face opposite ``pi[3]`` and meets the subdivision of the
    neighbouring big tetrahedron.
    """
    n = tri.size
    out = Triangulation(24 * n)

    def little(t: int, p: Perm) -> int:
        return 24 * t + PERM_INDEX[p]

    swaps = ((1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2))
    for t in range(n):
        for p in S4:
            me = little(t, p)
            for i in range(3):
                mate = little(t, compose(p, swaps[i]))
                if me < mate:
                    out.glue(me, i, mate, IDENTITY)
            g = tri.adjacent(t, p[3])
            if g is not None:
                u, q = g
                mate = little(u, compose(q, p))
                if me < mate:
                    out.glue(me, 3, mate, IDENTITY)
    return out
