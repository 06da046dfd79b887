"""Thin scripting bindings over the ``tritop`` kernel.

Everything here delegates to :mod:`tritop`; no topology is computed in
this package.  :class:`BoundApi` exposes the operations an interactive
session needs — building a triangulation gluing by gluing, homology,
vertex normal surface enumeration with per-surface Euler characteristics,
signatures, simplification, and recognition — and :func:`session_parity`
runs a scripted session against a fresh api, collecting everything the
script says into a transcript whose lines match the ``tritop``
command-line tool's output byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import tritop

__all__ = [
    "BoundApi",
    "BoundSurface",
    "SurfaceSet",
    "projective_space_script",
    "session_parity",
]


@dataclass(frozen=True)
class BoundSurface:
    """One vertex normal surface: Euler characteristic plus rendering."""

    euler: Fraction | int
    rendered: str


class SurfaceSet:
    """Handle for one enumeration: a count and per-surface data."""

    def __init__(self, entries: Iterable[BoundSurface]):
        self._entries = tuple(entries)

    @property
    def count(self) -> int:
        return len(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[BoundSurface]:
        return iter(self._entries)

    def __getitem__(self, index: int) -> BoundSurface:
        return self._entries[index]

    def __repr__(self) -> str:
        return f"<SurfaceSet: {self.count} surfaces>"


class BoundApi:
    """Scripting facade over the kernel.

    Every method is a direct delegation to ``tritop``.  ``echo`` receives
    each line passed to :meth:`say` (default: ``print``); the transcript
    machinery in :func:`session_parity` redirects it.  Errors raised by
    the kernel (``ValueError`` on malformed input, ``PreconditionError``
    on rejected computations) propagate unchanged.
    """

    def __init__(self, echo: Callable[[str], None] = print):
        self._echo = echo

    # -- construction and mutation --------------------------------------

    def new_triangulation(self, size: int = 0) -> tritop.Triangulation:
        """``size`` unglued tetrahedra, ready for :meth:`join` calls."""
        return tritop.Triangulation(size)

    def join(
        self,
        tri: tritop.Triangulation,
        tet: int,
        face: int,
        other: int,
        perm: Sequence[int],
    ) -> None:
        """Glue face ``face`` of ``tet`` to ``other`` under ``perm``."""
        tri.glue(tet, face, other, tuple(perm))

    def from_table(self, text: str) -> tritop.Triangulation:
        """Parse the plain-text gluing-table format."""
        return tritop.Triangulation.from_text(text)

    # -- invariants ------------------------------------------------------

    def homology(self, tri: tritop.Triangulation) -> str:
        """First homology, rendered exactly as the command line prints it."""
        return str(tritop.first_homology(tri))

    def surfaces(
        self, tri: tritop.Triangulation, coords: str = tritop.STANDARD
    ) -> SurfaceSet:
        """Vertex normal surfaces in the given coordinate system."""
        return SurfaceSet(
            BoundSurface(tritop.analyze(tri, sv).euler_char, sv.rendered())
            for sv in tritop.enumerate_vertex_surfaces(tri, coords)
        )

    # -- signatures --------------------------------------------------------

    def signature(self, tri: tritop.Triangulation) -> str:
        return tritop.encode(tri)

    def from_signature(self, sig: str) -> tritop.Triangulation:
        return tritop.decode(sig)

    def isomorphic(self, a: tritop.Triangulation, b: tritop.Triangulation) -> bool:
        return tritop.encode(a) == tritop.encode(b)

    # -- simplification and recognition -------------------------------------

    def simplify(
        self, tri: tritop.Triangulation, seed: int = 0
    ) -> tritop.Triangulation:
        """Greedy simplification; returns the (possibly smaller) result."""
        return tritop.simplify_fast(tri, rng_seed=seed).result

    def recognize(self, tri: tritop.Triangulation, seed: int = 0) -> str:
        """The same one-line verdict the command-line tool prints.

        One of ``S3``, ``B3``, ``connected-sum: [...] + ...``, or
        ``unrecognized``; decompositions are only attempted on valid
        closed connected orientable inputs, and rejected computations
        fall back to ``unrecognized`` just as the command line does.
        """
        skeleton = tri.skeleton()
        try:
            if tritop.is_three_sphere(tri, rng_seed=seed):
                return "S3"
            if tritop.is_ball(tri, rng_seed=seed):
                return "B3"
            if (
                tri.size
                and skeleton.valid
                and skeleton.closed
                and skeleton.connected
                and skeleton.orientable
            ):
                result = tritop.connected_sum_decomposition(tri, rng_seed=seed)
                sigs = sorted(tritop.encode(piece) for piece in result.summands)
                named = result.appended_named
                return (
                    f"connected-sum: [{', '.join(sigs)}]"
                    f" + {named['S2xS1']}×S2xS1"
                    f" + {named['RP3']}×RP3"
                    f" + {named['L(3,1)']}×L(3,1)"
                )
            return "unrecognized"
        except tritop.PreconditionError:
            return "unrecognized"

    # -- transcript ----------------------------------------------------------

    def say(self, line: object) -> None:
        """Emit one transcript line."""
        self._echo(str(line))


def projective_space_script(api: BoundApi) -> None:
    """The reference interactive session.

    Builds the two-tetrahedron projective space with four gluings, prints
    its first homology, counts its standard vertex normal surfaces, and
    prints the ones of Euler characteristic 1 (the two projective planes).
    """
    tri = api.new_triangulation(2)
    api.join(tri, 0, 3, 1, (0, 1, 2, 3))
    api.join(tri, 0, 2, 1, (0, 1, 2, 3))
    api.join(tri, 0, 1, 1, (1, 0, 3, 2))
    api.join(tri, 0, 0, 1, (1, 0, 3, 2))
    api.say(api.homology(tri))
    surfaces = api.surfaces(tri)
    api.say(f"{surfaces.count} vertex normal surfaces")
    for surface in surfaces:
        if surface.euler == 1:
            api.say(surface.rendered)


def session_parity(
    script: Callable[[BoundApi], None] = projective_space_script,
) -> str:
    """Run ``script`` against a fresh api and return its transcript.

    The transcript is exactly the lines the script said, each terminated
    by a newline, in order.
    """
    lines: list[str] = []
    script(BoundApi(echo=lines.append))
    return "".join(line + "\n" for line in lines)
