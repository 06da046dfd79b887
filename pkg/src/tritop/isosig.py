"""Isomorphism signatures: canonical string names for triangulations.

Two triangulations are combinatorially isomorphic when some relabelling of
tetrahedra and of the vertices within each tetrahedron carries one gluing
table to the other.  The *signature* computed here is a string invariant:
equal signatures exactly characterise isomorphic (connected) triangulations.

The signature is the serialisation of a canonical breadth-first traversal.
For every choice of a start tetrahedron and a labelling of its four
vertices (there are 24n such choices), tetrahedra are discovered in order;
a newly discovered tetrahedron is relabelled so that the gluing leading to
it becomes the identity permutation.  Each face slot, taken in discovery
order, emits one record: ``boundary``, ``new`` (attach the next unseen
tetrahedron via the identity) or ``backref`` (glue to an already-seen
tetrahedron, recording its discovery index and the gluing permutation in
canonical labels).  The lexicographically least record stream over all
24n traversals is the canonical form, and the signature serialises exactly
that stream — so the triangulation can be rebuilt from the string.

Serialisation: the leading character ``A`` names this format version; next
comes the tetrahedron count, then one block per record: ``a`` (boundary),
``b`` (new), or ``c`` + destination index + permutation character
(backref).  Counts below 63 use a single character of the 64-symbol
alphabet; larger counts use the escape character followed by three
little-endian base-64 digits.
"""

from __future__ import annotations

from .perm4 import IDENTITY, PERM_INDEX, Perm, S4, compose, inverse
from .triangulation import PreconditionError, Triangulation

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_CHAR_VALUE = {c: i for i, c in enumerate(ALPHABET)}
_VERSION = "A"
_ESCAPE = 63  # count escape marker
_COUNT_LIMIT = 64**3


class MalformedSignature(ValueError):
    """The string is not a well-formed signature in this format."""


def _walk(tri: Triangulation, start: int, rho: Perm, best: list[int] | None):
    """One canonical traversal, as a flat record stream.

    Record encodings in the stream: boundary -> (0,); new -> (1,);
    backref -> (2, destination, permutation index).  Returns None as soon
    as the stream provably exceeds ``best`` lexicographically.
    """
    order = [start]
    pos = {start: 0}
    lab = {start: rho}  # original labels -> canonical labels
    seq: list[int] = []
    tracking = best is not None
    done: set[tuple[int, int]] = set()
    k = 0
    while k < len(order):
        t = order[k]
        lt = lab[t]
        inv_lt = inverse(lt)
        for fn in range(4):
            if (k, fn) in done:
                continue
            fo = inv_lt[fn]
            g = tri.adjacent(t, fo)
            if g is None:
                rec: tuple[int, ...] = (0,)
            else:
                u, p = g
                if u not in lab:
                    # Relabel u so this gluing becomes the identity.
                    lab[u] = compose(lt, inverse(p))
                    pos[u] = len(order)
                    order.append(u)
                    done.add((pos[u], fn))
                    rec = (1,)
                else:
                    q = compose(lab[u], compose(p, inv_lt))
                    m = pos[u]
                    target = (m, q[fn])
                    if target <= (k, fn):
                        raise AssertionError("traversal revisited a consumed slot")
                    done.add(target)
                    rec = (2, m, PERM_INDEX[q])
            for x in rec:
                if tracking:
                    bx = best[len(seq)]
                    if x > bx:
                        return None
                    if x < bx:
                        tracking = False
                seq.append(x)
        k += 1
    if len(order) != tri.size:
        raise PreconditionError(
            "isomorphism signatures require a connected triangulation"
        )
    return seq


def _encode_count(x: int, out: list[str]) -> None:
    if x < 0 or x >= _COUNT_LIMIT:
        raise ValueError(f"count out of range: {x}")
    if x < _ESCAPE:
        out.append(ALPHABET[x])
    else:
        out.append(ALPHABET[_ESCAPE])
        for _ in range(3):
            out.append(ALPHABET[x % 64])
            x //= 64


class _Reader:
    def __init__(self, s: str):
        self.s = s
        self.i = 0

    def char(self) -> str:
        if self.i >= len(self.s):
            raise MalformedSignature("signature truncated")
        c = self.s[self.i]
        self.i += 1
        return c

    def value(self) -> int:
        c = self.char()
        if c not in _CHAR_VALUE:
            raise MalformedSignature(f"illegal character {c!r}")
        return _CHAR_VALUE[c]

    def count(self) -> int:
        v = self.value()
        if v < _ESCAPE:
            return v
        x = 0
        for k in range(3):
            x += self.value() * (64**k)
        return x

    def exhausted(self) -> bool:
        return self.i == len(self.s)


def encode(tri: Triangulation) -> str:
    """Canonical signature of a connected triangulation."""
    n = tri.size
    out: list[str] = [_VERSION]
    _encode_count(n, out)
    if n == 0:
        return "".join(out)
    best: list[int] | None = None
    for start in range(n):
        for rho in S4:
            seq = _walk(tri, start, rho, best)
            if seq is not None and (best is None or seq < best):
                best = seq
    assert best is not None
    i = 0
    while i < len(best):
        kind = best[i]
        if kind == 0:
            out.append("a")
            i += 1
        elif kind == 1:
            out.append("b")
            i += 1
        else:
            out.append("c")
            _encode_count(best[i + 1], out)
            out.append(ALPHABET[best[i + 2]])
            i += 3
    return "".join(out)


def decode(sig: str) -> Triangulation:
    """Rebuild a triangulation from a signature string.

    Accepts any well-formed record stream (not only canonical ones) and
    validates it fully; raises :class:`MalformedSignature` otherwise.
    """
    rd = _Reader(sig)
    if rd.char() != _VERSION:
        raise MalformedSignature("unknown signature version")
    n = rd.count()
    tri = Triangulation(n)
    if n == 0:
        if not rd.exhausted():
            raise MalformedSignature("trailing characters")
        return tri
    discovered = 1
    done: set[tuple[int, int]] = set()
    k = 0
    while k < discovered:
        for fn in range(4):
            if (k, fn) in done:
                continue
            c = rd.char()
            if c == "a":
                continue
            if c == "b":
                if discovered >= n:
                    raise MalformedSignature("more tetrahedra than declared")
                m = discovered
                discovered += 1
                tri.glue(k, fn, m, IDENTITY)
                done.add((m, fn))
            elif c == "c":
                m = rd.count()
                v = rd.value()
                if m >= discovered:
                    raise MalformedSignature("backward reference to unseen tetrahedron")
                if v >= 24:
                    raise MalformedSignature("illegal permutation character")
                q = S4[v]
                target = (m, q[fn])
                if target <= (k, fn):
                    raise MalformedSignature("gluing target already consumed")
                try:
                    tri.glue(k, fn, m, q)
                except ValueError as exc:
                    raise MalformedSignature(str(exc)) from None
                done.add(target)
            else:
                raise MalformedSignature(f"unexpected record character {c!r}")
        k += 1
    if discovered != n:
        raise MalformedSignature("signature describes a disconnected triangulation")
    if not rd.exhausted():
        raise MalformedSignature("trailing characters")
    return tri


def is_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """Whether two connected triangulations are combinatorially isomorphic."""
    if a.size != b.size:
        return False
    return encode(a) == encode(b)
