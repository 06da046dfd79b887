"""First homology of a triangulated 3-manifold, via the dual handle picture.

Treating each tetrahedron as a 0-handle, each internal face as a 1-handle
and each internal edge as a 2-handle presents the fundamental group:
generators correspond to internal faces, and each internal edge contributes
one relator, read off by walking around the edge and recording the faces
crossed (with signs given by crossing direction).  Abelianising and adding
one trivial relation per spanning-forest face yields a presentation of the
first homology group, whose invariant factors come from the Smith normal
form of the relation matrix.

Everything is computed over exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .skeleton import edge_fan
from .triangulation import PreconditionError, Triangulation


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Invariant factors of an integer matrix.

    Returns the nonzero diagonal entries ``d_1 | d_2 | ... | d_k`` of the
    Smith normal form (all positive, each dividing the next); ``k`` is the
    rank of the matrix.
    """
    mat = [list(r) for r in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    if any(len(r) != n_cols for r in mat):
        raise ValueError("ragged matrix")
    factors: list[int] = []
    t = 0
    while t < min(n_rows, n_cols):
        # Locate a nonzero entry of least absolute value as the pivot.
        piv = None
        best = None
        for i in range(t, n_rows):
            row = mat[i]
            for j in range(t, n_cols):
                v = row[j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        i0, j0 = piv
        mat[t], mat[i0] = mat[i0], mat[t]
        if j0 != t:
            for row in mat:
                row[t], row[j0] = row[j0], row[t]
        while True:
            if mat[t][t] < 0:
                mat[t] = [-v for v in mat[t]]
            p = mat[t][t]
            # Clear the pivot column.  A nonzero remainder is strictly
            # smaller than the pivot; swap it up and start over.
            restart = False
            for i in range(t + 1, n_rows):
                v = mat[i][t]
                if v == 0:
                    continue
                q, r = divmod(v, p)
                row_t, row_i = mat[t], mat[i]
                for j in range(t, n_cols):
                    row_i[j] -= q * row_t[j]
                if r:
                    mat[t], mat[i] = mat[i], mat[t]
                    restart = True
                    break
            if restart:
                continue
            # Clear the pivot row.
            for j in range(t + 1, n_cols):
                v = mat[t][j]
                if v == 0:
                    continue
                q, r = divmod(v, p)
                for row in mat:
                    row[j] -= q * row[t]
                if r:
                    for row in mat:
                        row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if restart:
                continue
            # Pivot must divide every remaining entry; if not, folding the
            # offending row into the pivot row creates a smaller pivot.
            offender = None
            for i in range(t + 1, n_rows):
                row = mat[i]
                for j in range(t + 1, n_cols):
                    if row[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_t, row_o = mat[t], mat[offender]
            for j in range(t, n_cols):
                row_t[j] += row_o[j]
        factors.append(mat[t][t])
        t += 1
    return factors


@dataclass(frozen=True)
class HomologySummary:
    """Rank and torsion of a finitely generated abelian group."""

    rank: int
    #: Torsion invariant factors, each > 1, each dividing the next.
    torsion: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_count_divisible_by(self, k: int) -> int:
        """Number of invariant factors divisible by ``k``."""
        return sum(1 for d in self.torsion if d % k == 0)

    def render(self) -> str:
        """Human-readable group name, e.g. ``Z + Z_2`` or ``2 Z``."""
        parts: list[str] = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"{self.rank} Z")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def first_homology(tri: Triangulation) -> HomologySummary:
    """First homology group of the triangulated manifold.

    Works for closed, bounded and ideal triangulations (for ideal ones this
    is the homology of the manifold with its ideal vertices removed, which
    agrees with the usual meaning of an ideal triangulation).  Raises
    :class:`PreconditionError` for invalid triangulations.
    """
    sk = tri.skeleton()
    if not sk.valid:
        raise PreconditionError("first homology requires a valid triangulation")

    internal_faces = [fc for fc in sk.faces if not fc.boundary]
    gen_index = {fc.index: i for i, fc in enumerate(internal_faces)}
    n_gens = len(internal_faces)

    rows: list[list[int]] = []

    # One relator per internal edge: the faces crossed when circling it.
    for ec in sk.edges:
        if ec.boundary:
            continue
        t0, e0 = ec.slots[0]
        frames, closed = edge_fan(tri, t0, e0)
        if not closed:
            raise AssertionError("internal edge produced an open fan")
        row = [0] * n_gens
        for t, phi in frames:
            face = phi[2]
            fc = sk.faces[sk.face_index[t][face]]
            g = gen_index[fc.index]
            row[g] += 1 if fc.slots[0] == (t, face) else -1
        rows.append(row)

    # Spanning forest over tetrahedra through internal faces: tree faces die.
    visited = [False] * tri.size
    for root in range(tri.size):
        if visited[root]:
            continue
        visited[root] = True
        stack = [root]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.adjacent(t, f)
                if g is None or visited[g[0]]:
                    continue
                visited[g[0]] = True
                stack.append(g[0])
                row = [0] * n_gens
                row[gen_index[sk.face_index[t][f]]] = 1
                rows.append(row)

    factors = smith_normal_form(rows) if rows else []
    rank = n_gens - len(factors)
    torsion = tuple(d for d in factors if d > 1)
    return HomologySummary(rank=rank, torsion=torsion)
