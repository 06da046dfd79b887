"""Permutations of {0, 1, 2, 3} and the combinatorics of a single tetrahedron.

Throughout the package a tetrahedron has vertices 0..3, faces 0..3 (face i is
the face opposite vertex i, spanned by the other three vertices), and edges
0..5 numbered by the ordered list of vertex pairs

    edge 0 = {0,1}, edge 1 = {0,2}, edge 2 = {0,3},
    edge 3 = {1,2}, edge 4 = {1,3}, edge 5 = {2,3}.

Permutations are stored as 4-tuples ``p`` with ``p[i]`` the image of ``i``.
Composition follows the usual right-to-left convention:
``compose(p, q)[i] == p[q[i]]`` (apply ``q`` first, then ``p``).

Quadrilateral types: the three ways of splitting the vertex set into two
pairs are numbered

    type 0 = {0,1} | {2,3},  type 1 = {0,2} | {1,3},  type 2 = {0,3} | {1,2}.

``PAIR_TYPE[a][b]`` is the type whose partition puts ``a`` and ``b`` in the
same pair.  A quadrilateral of type t separates the two pairs of type t, and
``PAIR_TYPE[a][b]`` is likewise the type of quadrilateral that runs parallel
to edge {a,b} (equivalently: the type disjoint from neither; the two types
*cut* by edge {a,b} are the other two).
"""

from __future__ import annotations

from itertools import permutations as _permutations

Perm = tuple[int, int, int, int]

#: All 24 permutations of {0,1,2,3} in lexicographic order.
S4: tuple[Perm, ...] = tuple(_permutations(range(4)))

#: Index of each permutation inside :data:`S4`.
PERM_INDEX: dict[Perm, int] = {p: i for i, p in enumerate(S4)}

IDENTITY: Perm = (0, 1, 2, 3)


def compose(p: Perm, q: Perm) -> Perm:
    """Return the composite permutation "p after q" (apply q, then p)."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def inverse(p: Perm) -> Perm:
    """Return the inverse permutation."""
    inv = [0, 0, 0, 0]
    for i in range(4):
        inv[p[i]] = i
    return tuple(inv)  # type: ignore[return-value]


def sign(p: Perm) -> int:
    """Return +1 for even permutations, -1 for odd ones."""
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


#: The six edges of a tetrahedron as ordered vertex pairs (a < b).
EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

#: ``EDGE_INDEX[a][b]`` = edge number of {a,b} (a != b, any order).
EDGE_INDEX: tuple[tuple[int, ...], ...] = tuple(
    tuple(EDGES.index(tuple(sorted((a, b)))) if a != b else -1 for b in range(4))
    for a in range(4)
)

#: Edge opposite to each edge (the complementary vertex pair).
EDGE_OPPOSITE: tuple[int, ...] = (5, 4, 3, 2, 1, 0)

#: ``FACE_VERTICES[f]`` = the three vertices of face f, in ascending order.
FACE_VERTICES: tuple[tuple[int, int, int], ...] = tuple(
    tuple(v for v in range(4) if v != f) for f in range(4)
)

#: ``PAIR_TYPE[a][b]`` = the pairing type placing a and b in the same pair.
_pt = [[-1] * 4 for _ in range(4)]
for _t, (_p1, _p2) in enumerate((((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))):
    for _a, _b in (_p1, _p2):
        _pt[_a][_b] = _t
        _pt[_b][_a] = _t
PAIR_TYPE: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in _pt)
del _pt, _t, _p1, _p2, _a, _b

#: ``PAIR_SIDES[t]`` = the two pairs of type t; the pair containing 0 first.
PAIR_SIDES: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)

#: ``PAIR_PARTNER[t][v]`` = the vertex paired with v under type t.
PAIR_PARTNER: tuple[tuple[int, ...], ...] = tuple(
    tuple(next(p[1 - p.index(v)] for p in PAIR_SIDES[t] if v in p) for v in range(4))
    for t in range(3)
)


def map_edge(p: Perm, e: int) -> tuple[int, bool]:
    """Return ``(e', reversed)``: the image of edge e under p.

    ``reversed`` is True when p exchanges the ascending order of the
    endpoints (i.e. the edge direction flips).
    """
    a, b = EDGES[e]
    pa, pb = p[a], p[b]
    if pa < pb:
        return EDGE_INDEX[pa][pb], False
    return EDGE_INDEX[pa][pb], True


#: ``FACE_GLUINGS[f1][f2]`` = the six permutations p with p[f1] == f2,
#: i.e. all ways to glue face f1 of one tetrahedron to face f2 of another.
FACE_GLUINGS: tuple[tuple[tuple[Perm, ...], ...], ...] = tuple(
    tuple(tuple(p for p in S4 if p[f1] == f2) for f2 in range(4)) for f1 in range(4)
)


def face_gluing_from_images(f1: int, f2: int, images: dict[int, int]) -> Perm:
    """Build the gluing permutation sending face f1 onto face f2.

    ``images`` maps each vertex of face f1 to a vertex of face f2; the
    off-face vertex f1 is sent to f2 automatically.
    """
    out = [-1, -1, -1, -1]
    out[f1] = f2
    for v, w in images.items():
        if v == f1 or w == f2:
            raise ValueError("images must map face vertices to face vertices")
        out[v] = w
    if sorted(out) != [0, 1, 2, 3]:
        raise ValueError(f"images do not describe a bijection: {images}")
    return tuple(out)  # type: ignore[return-value]


# Dense integer-indexed tables for hot loops (census enumeration).
COMPOSE_INDEX: tuple[tuple[int, ...], ...] = tuple(
    tuple(PERM_INDEX[compose(p, q)] for q in S4) for p in S4
)
INVERSE_INDEX: tuple[int, ...] = tuple(PERM_INDEX[inverse(p)] for p in S4)
SIGN_INDEX: tuple[int, ...] = tuple(sign(p) for p in S4)
#: ``EDGE_MAP_INDEX[pi][e]`` = (image edge, 1 if direction reversed else 0).
EDGE_MAP_INDEX: tuple[tuple[tuple[int, int], ...], ...] = tuple(
    tuple((lambda em: (em[0], int(em[1])))(map_edge(p, e)) for e in range(6)) for p in S4
)
