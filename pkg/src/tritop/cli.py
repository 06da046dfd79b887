"""Command-line front end for the triangulation kernel.

One subcommand per workflow: census generation, simplification, normal
surface and angle structure enumeration, recognition, homology, and
signature encoding/decoding.  Wherever a triangulation is expected, the
argument may be a signature string, a path to a file, or inline gluing
text; file contents and inline text are recognised by their ``tets N``
header, anything else is parsed as a signature.

Data goes to stdout; progress and summary diagnostics go to stderr.
All output is byte-deterministic for fixed inputs and seeds.

Exit codes: 0 success, 1 usage or input error, 2 computation rejected
(a precondition failed), 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .angles import enumerate_taut, enumerate_vertex_angle_structures
from .census import CensusSpec, enumerate_census
from .homology import first_homology
from .isosig import MalformedSignature, decode, encode
from .recognize import connected_sum_decomposition, is_ball, is_three_sphere
from .simplify import simplify_exhaustive, simplify_fast
from .surfaces import QUAD_OCT, STANDARD_AN, enumerate_vertex_surfaces
from .triangulation import PreconditionError, Triangulation

__all__ = ["main"]

_TABLE_HEADER = re.compile(r"\s*tets\s+\d+\b")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def load_triangulation(spec: str) -> Triangulation:
    """Resolve a CLI triangulation argument.

    A path to an existing file is read first; the argument itself is
    used otherwise.  Text with a ``tets N`` header parses as a gluing
    table, anything else as an isomorphism signature.
    """
    text = spec
    path = Path(spec)
    try:
        if path.is_file():
            text = path.read_text()
    except OSError:
        pass
    if _TABLE_HEADER.match(text):
        return Triangulation.from_text(text)
    return decode(text.strip())


def _run_census(args: argparse.Namespace) -> int:
    spec = CensusSpec(
        args.tetrahedra,
        closed=args.internal,
        orientable=args.orientable,
        finite=args.finite,
    )
    print("Starting census generation...", file=sys.stderr)
    sigs = enumerate_census(spec, size_limit=args.size_limit)
    body = "".join(sig + "\n" for sig in sigs)
    if args.sigs is None:
        sys.stdout.write(body)
    else:
        Path(args.sigs).write_text(body)
    print("Finished.", file=sys.stderr)
    print(f"Total triangulations: {len(sigs)}", file=sys.stderr)
    return 0


def _run_simplify(args: argparse.Namespace) -> int:
    tri = load_triangulation(args.input)
    if args.exhaustive:
        report = simplify_exhaustive(tri, height=args.height, parallel_width=args.jobs)
    else:
        report = simplify_fast(tri, rng_seed=args.seed)
    print(report.status, file=sys.stderr)
    print(f"n: {report.initial_n} -> {report.final_n}")
    print(encode(report.result))
    return 0


def _run_surfaces(args: argparse.Namespace) -> int:
    tri = load_triangulation(args.input)
    surfaces = enumerate_vertex_surfaces(tri, args.coords)
    kind = "almost normal" if args.coords in (STANDARD_AN, QUAD_OCT) else "normal"
    print(f"{len(surfaces)} vertex {kind} surfaces")
    for surface in surfaces:
        print(surface.rendered())
    return 0


def _run_angles(args: argparse.Namespace) -> int:
    tri = load_triangulation(args.input)
    if args.taut:
        structures = enumerate_taut(tri)
        print(f"{len(structures)} taut angle structures")
    else:
        structures = enumerate_vertex_angle_structures(tri)
        print(f"{len(structures)} vertex angle structures")
    for structure in structures:
        print(structure.rendered())
    return 0


def _run_recognize(args: argparse.Namespace) -> int:
    tri = load_triangulation(args.input)
    skeleton = tri.skeleton()
    try:
        if is_three_sphere(tri, rng_seed=args.seed):
            print("S3")
        elif is_ball(tri, rng_seed=args.seed):
            print("B3")
        elif (
            tri.size
            and skeleton.valid
            and skeleton.closed
            and skeleton.connected
            and skeleton.orientable
        ):
            result = connected_sum_decomposition(tri, rng_seed=args.seed)
            sigs = sorted(encode(piece) for piece in result.summands)
            named = result.appended_named
            print(
                f"connected-sum: [{', '.join(sigs)}]"
                f" + {named['S2xS1']}×S2xS1"
                f" + {named['RP3']}×RP3"
                f" + {named['L(3,1)']}×L(3,1)"
            )
        else:
            print("unrecognized")
    except PreconditionError:
        print("unrecognized")
    return 0


def _run_homology(args: argparse.Namespace) -> int:
    tri = load_triangulation(args.input)
    print(first_homology(tri))
    return 0


def _run_isosig(args: argparse.Namespace) -> int:
    if args.encode is not None:
        print(encode(load_triangulation(args.encode)))
    else:
        sys.stdout.write(decode(args.decode.strip()).to_text())
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="tritop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    census = sub.add_parser("census", help="enumerate triangulations up to isomorphism")
    census.add_argument("--tetrahedra", type=int, required=True, metavar="N")
    census.add_argument(
        "--internal", action="store_true", help="require every face glued"
    )
    census.add_argument("--orientable", action="store_true")
    census.add_argument("--finite", action="store_true", help="valid and not ideal")
    census.add_argument("--sigs", metavar="FILE", help="write signatures here instead of stdout")
    census.add_argument("--size-limit", type=int, default=5, metavar="M")
    census.set_defaults(handler=_run_census)

    simplify = sub.add_parser("simplify", help="reduce the number of tetrahedra")
    simplify.add_argument("input")
    simplify.add_argument("--exhaustive", action="store_true", help="breadth-first search")
    simplify.add_argument("--height", type=int, default=2, metavar="H")
    simplify.add_argument("--seed", type=int, default=0, metavar="S")
    simplify.add_argument("--jobs", type=int, default=None, metavar="K")
    simplify.set_defaults(handler=_run_simplify)

    surfaces = sub.add_parser("surfaces", help="enumerate vertex surfaces")
    surfaces.add_argument("input")
    surfaces.add_argument(
        "--coords",
        choices=("standard", "quad", "standardan", "quadoct"),
        default="standard",
    )
    surfaces.set_defaults(handler=_run_surfaces)

    angles = sub.add_parser("angles", help="enumerate angle structures")
    angles.add_argument("input")
    mode = angles.add_mutually_exclusive_group(required=True)
    mode.add_argument("--taut", action="store_true")
    mode.add_argument("--all", action="store_true")
    angles.set_defaults(handler=_run_angles)

    recognize = sub.add_parser("recognize", help="identify the underlying manifold")
    recognize.add_argument("input")
    recognize.add_argument("--seed", type=int, default=0, metavar="S")
    recognize.set_defaults(handler=_run_recognize)

    homology = sub.add_parser("homology", help="print the first homology group")
    homology.add_argument("input")
    homology.set_defaults(handler=_run_homology)

    isosig = sub.add_parser("isosig", help="signature encoding and decoding")
    direction = isosig.add_mutually_exclusive_group(required=True)
    direction.add_argument("--encode", metavar="FILE")
    direction.add_argument("--decode", metavar="SIG")
    isosig.set_defaults(handler=_run_isosig)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MalformedSignature, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
