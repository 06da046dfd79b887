"""Independent reference implementations used to check tritop's results.

Everything here is deliberately written with different algorithms from the
package itself: exact Gaussian elimination over fractions, support-set
enumeration of extreme rays, naive class-merging for identification
orbits, and sympy as an external check for Smith normal forms.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

from tritop.perm4 import EDGE_INDEX, FACE_VERTICES, S4
from tritop.triangulation import Triangulation

# ---------------------------------------------------------------------------
# exact linear algebra


def fraction_rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[Fraction(v) for v in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1, 1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def fraction_rank(rows: list[list[int]]) -> int:
    if not rows:
        return 0
    _, pivots = fraction_rref([[Fraction(v) for v in row] for row in rows])
    return len(pivots)


def fraction_nullspace(rows: list[list[int]], dim: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of the matrix (dim = column count)."""
    if not rows:
        rows = [[0] * dim]
    rref, pivots = fraction_rref([[Fraction(v) for v in row] for row in rows])
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def primitive_integer(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    fracs = [Fraction(v) for v in vec]
    denom = 1
    for v in fracs:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# extreme rays by support enumeration


def extreme_rays_by_support(rows: list[list[int]], dim: int) -> list[tuple[int, ...]]:
    """All extreme rays of {x >= 0 : rows . x = 0}, via support subsets.

    A nonzero x in the cone spans an extreme ray exactly when the columns
    of the equation matrix indexed by its support have a one-dimensional
    kernel.  Enumerate every support candidate and keep those whose kernel
    generator is strictly positive throughout the support.
    """
    found: set[tuple[int, ...]] = set()
    for size in range(1, dim + 1):
        for support in combinations(range(dim), size):
            sub = [[row[c] for c in support] for row in rows]
            kernel = fraction_nullspace(sub, size)
            if len(kernel) != 1:
                continue
            gen = kernel[0]
            if all(v > 0 for v in gen):
                pass
            elif all(v < 0 for v in gen):
                gen = [-v for v in gen]
            else:
                continue
            full = [Fraction(0)] * dim
            for c, v in zip(support, gen):
                full[c] = v
            found.add(primitive_integer(full))
    return sorted(found)


def adjacent_by_scan(rays: list[tuple[int, ...]], x1, x2) -> bool:
    """Combinatorial adjacency by scanning every other ray."""
    z1 = {i for i, v in enumerate(x1) if v == 0}
    z2 = {i for i, v in enumerate(x2) if v == 0}
    common = z1 & z2
    for z in rays:
        if z == x1 or z == x2:
            continue
        if all(z[i] == 0 for i in common):
            return False
    return True


# ---------------------------------------------------------------------------
# identification orbits by naive class merging


def _merge_classes(elements, pairs):
    cls = {e: {e} for e in elements}
    for a, b in pairs:
        sa, sb = cls[a], cls[b]
        if sa is sb:
            continue
        if len(sa) < len(sb):
            sa, sb = sb, sa
        sa.update(sb)
        for e in sb:
            cls[e] = sa
    seen = set()
    out = []
    for e in elements:
        s = id(cls[e])
        if s not in seen:
            seen.add(s)
            out.append(frozenset(cls[e]))
    return out


def vertex_orbits_naive(tri: Triangulation) -> list[frozenset]:
    elements = [(t, v) for t in range(tri.size) for v in range(4)]
    pairs = []
    for t in range(tri.size):
        for f in range(4):
            g = tri.adjacent(t, f)
            if g is None:
                continue
            u, p = g
            for v in FACE_VERTICES[f]:
                pairs.append(((t, v), (u, p[v])))
    return _merge_classes(elements, pairs)


def edge_orbits_naive(tri: Triangulation):
    """Edge orbits with reversal detection, via directed edge classes.

    Returns (orbits, reversed_flags): orbits as frozensets of (t, edge),
    and a parallel list marking orbits identified with themselves reversed.
    """
    elements = [
        (t, a, b) for t in range(tri.size) for a in range(4) for b in range(4) if a != b
    ]
    pairs = []
    for t in range(tri.size):
        for f in range(4):
            g = tri.adjacent(t, f)
            if g is None:
                continue
            u, p = g
            fv = FACE_VERTICES[f]
            for a in fv:
                for b in fv:
                    if a != b:
                        pairs.append(((t, a, b), (u, p[a], p[b])))
    directed = _merge_classes(elements, pairs)
    directed_class = {}
    for cls in directed:
        for e in cls:
            directed_class[e] = cls
    orbits = []
    flags = []
    seen = set()
    for t, a, b in elements:
        if a > b:
            continue
        cls = directed_class[(t, a, b)]
        if id(cls) in seen:
            continue
        seen.add(id(cls))
        rev = (t, b, a) in cls
        slots = frozenset(
            (tt, EDGE_INDEX[x][y]) for (tt, x, y) in cls
        )
        if rev:
            orbits.append(slots)
            flags.append(True)
        else:
            mirror = directed_class[(t, b, a)]
            seen.add(id(mirror))
            orbits.append(slots)
            flags.append(False)
    return orbits, flags


def face_orbits_naive(tri: Triangulation) -> list[frozenset]:
    elements = [(t, f) for t in range(tri.size) for f in range(4)]
    pairs = []
    for t in range(tri.size):
        for f in range(4):
            g = tri.adjacent(t, f)
            if g is not None:
                pairs.append(((t, f), (g[0], g[1][f])))
    return _merge_classes(elements, pairs)


# ---------------------------------------------------------------------------
# sympy-backed Smith normal form


def invariant_factors_sympy(rows: list[list[int]]) -> list[int]:
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    if not rows or not rows[0]:
        return []
    m = Matrix(rows)
    if m.rank() == 0:
        return []
    snf = sympy_snf(m)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.rows, snf.cols))]
    return [d for d in diag if d != 0]


# ---------------------------------------------------------------------------
# random triangulations


def random_triangulation(
    rng: random.Random, n: int, glue_probability: float = 0.8
) -> Triangulation:
    """A random gluing table: matches face slots with random permutations.

    Not usually a manifold triangulation; useful for exercising orbit
    computations, the text format and signatures on arbitrary input.
    """
    tri = Triangulation(n)
    slots = [(t, f) for t in range(n) for f in range(4)]
    rng.shuffle(slots)
    while len(slots) >= 2:
        t, f = slots.pop()
        if tri.is_glued(t, f):
            continue
        if rng.random() > glue_probability:
            continue
        candidates = [s for s in slots if not tri.is_glued(*s)]
        if not candidates:
            break
        u, f2 = rng.choice(candidates)
        perm = rng.choice([p for p in S4 if p[f] == f2])
        if t == u and perm[f] == f:
            continue
        tri.glue(t, f, u, perm)
    return tri


def random_valid_triangulation(rng: random.Random, n: int) -> Triangulation:
    """Rejection-sample a random triangulation whose skeleton is valid."""
    while True:
        tri = random_triangulation(rng, n)
        if tri.skeleton().valid:
            return tri


def reachable_in_multigraph(arcs, start: int, goal: int) -> bool:
    """Depth-first reachability over an undirected multigraph arc list."""
    if start == goal:
        return True
    adjacency: dict[int, set[int]] = {}
    for a, b in arcs:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in adjacency.get(node, ()):
            if nxt == goal:
                return True
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def brute_census(
    n: int, *, closed: bool = False, orientable: bool = False, finite: bool = False
) -> list[str]:
    """Census by exhausting every gluing table, with no pruning at all.

    Every face slot independently stays boundary or glues to any later
    slot via any of the six permutations; filters are applied only after
    each complete table is built, using the skeleton directly.  Only
    practical for one or two tetrahedra.
    """
    if n == 0:
        return []
    face_perms = {
        (f, g): [p for p in S4 if p[f] == g] for f in range(4) for g in range(4)
    }
    adj: list[int | None] = [None] * (4 * n)
    gluings: list[tuple[int, int, int, tuple[int, ...]]] = []
    found: set[str] = set()

    def emit() -> None:
        tri = Triangulation.from_gluings(n, gluings)
        skeleton = tri.skeleton()
        if not skeleton.connected:
            return
        if closed and skeleton.has_boundary_faces:
            return
        if orientable and not skeleton.orientable:
            return
        if finite and (not skeleton.valid or skeleton.ideal):
            return
        from tritop.isosig import encode

        found.add(encode(tri))

    def recurse(slot: int) -> None:
        if slot == 4 * n:
            emit()
            return
        if adj[slot] is not None:
            recurse(slot + 1)
            return
        adj[slot] = -1
        recurse(slot + 1)
        adj[slot] = None
        t, f = divmod(slot, 4)
        for partner in range(slot + 1, 4 * n):
            if adj[partner] is not None:
                continue
            u, g = divmod(partner, 4)
            for p in face_perms[(f, g)]:
                adj[slot] = partner
                adj[partner] = slot
                gluings.append((t, f, u, p))
                recurse(slot + 1)
                gluings.pop()
                adj[slot] = None
                adj[partner] = None

    recurse(0)
    return sorted(found)
