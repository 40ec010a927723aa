"""Command-line front end.

Subcommands cover evaluation and membership, tropical determinants and
singularity, consistency of linear systems, intersection / component /
dimension queries on polynomial systems, CNF encoders with a brute-force
model counter for cross-checking, and SVG plots of plane curves.

Exit codes: 0 for success or a "yes" answer, 1 for a "no" answer, 2 for
usage or input errors, 3 when the cell-enumeration cap is exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .cells import DEFAULT_CAP
from .errors import CapExceeded, EmptyPrevariety, FormatError, MinplusError
from .gadgets import brute_force_count, encode, encoding_to_text, parse_dimacs
from .polynomials import load_system
from .svgplot import plot_curve
from .topology import (
    analyze,
    connected_components,
    intersect_nonempty,
    is_connected,
    prevariety_dimension,
)
from .tropmat import (
    LinearTropicalSystem,
    is_singular,
    m_consistency_linear,
    parse_matrix,
    trop_det,
)

YES, NO, ERROR, CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(tok.strip()) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad point {text!r}: {exc}") from exc


def _load_matrix(path: str):
    return parse_matrix(_read(path))


def _cmd_eval(args) -> int:
    fs = load_system(args.system)
    x = _parse_point(args.point)
    for f in fs:
        value, tight = f.evaluate(x)
        print(f"value: {value} (tight: {len(tight)})")
    return YES


def _cmd_member(args) -> int:
    fs = load_system(args.system)
    x = _parse_point(args.point)
    ok = all(f.is_member(x) for f in fs)
    print("member: yes" if ok else "member: no")
    return YES if ok else NO


def _cmd_det(args) -> int:
    print(f"det: {trop_det(_load_matrix(args.matrix))}")
    return YES


def _cmd_singular(args) -> int:
    singular = is_singular(_load_matrix(args.matrix))
    print("singular: yes" if singular else "singular: no")
    return YES if singular else NO


def _cmd_consistency(args) -> int:
    sys_ = LinearTropicalSystem(load_system(args.system))
    ok = m_consistency_linear(sys_)
    print("consistent: yes" if ok else "consistent: no")
    return YES if ok else NO


def _cmd_intersect(args) -> int:
    witness = intersect_nonempty(load_system(args.system), cap=args.cap)
    if witness is None:
        print("nonempty: no")
        return NO
    print("nonempty: yes")
    print("witness: " + " ".join(str(c) for c in witness))
    return YES


def _cmd_components(args) -> int:
    print(analyze(load_system(args.system), cap=args.cap).to_text(), end="")
    return YES


def _cmd_connected(args) -> int:
    ok = is_connected(load_system(args.system), cap=args.cap)
    print("connected: yes" if ok else "connected: no")
    return YES if ok else NO


def _cmd_dimension(args) -> int:
    print(f"dimension: {prevariety_dimension(load_system(args.system), cap=args.cap)}")
    return YES


def _cmd_encode(args) -> int:
    enc = encode(parse_dimacs(_read(args.cnf)), args.variant)
    out = encoding_to_text(enc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        print(out, end="")
    return YES


def _cmd_count_sat(args) -> int:
    print(f"count: {brute_force_count(parse_dimacs(_read(args.cnf)))}")
    return YES


def _cmd_plot(args) -> int:
    fs = load_system(args.system)
    if len(fs) != 1:
        raise ValueError("plot expects a file with a single polynomial")
    viewport = _parse_point(args.viewport)
    if len(viewport) != 4:
        raise ValueError("viewport needs four entries: xmin,ymin,xmax,ymax")
    svg = plot_curve(fs[0], viewport)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        print(svg, end="")
    return YES


def _add_cap(p: argparse.ArgumentParser):
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="abort cell enumeration after this many search steps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minplus",
        description="Exact min-plus (tropical) polynomial system toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate each polynomial of a system at a point")
    p.add_argument("system")
    p.add_argument("-x", "--point", required=True,
                   help="comma-separated rationals, e.g. '1/2,0,-3'")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("member", help="test whether a point lies on every hypersurface")
    p.add_argument("system")
    p.add_argument("-x", "--point", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("det", help="tropical determinant of a square matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_det)

    p = sub.add_parser("singular", help="test tropical singularity of a square matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_singular)

    p = sub.add_parser(
        "consistency-linear",
        help="test whether m linear polynomials cut out a set of codimension m",
    )
    p.add_argument("system")
    p.set_defaults(func=_cmd_consistency)

    p = sub.add_parser("intersect", help="find a common point of the hypersurfaces")
    p.add_argument("system")
    _add_cap(p)
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("components", help="topological summary of the intersection")
    p.add_argument("system")
    _add_cap(p)
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser("connected", help="test connectedness of a nonempty intersection")
    p.add_argument("system")
    _add_cap(p)
    p.set_defaults(func=_cmd_connected)

    p = sub.add_parser("dimension", help="dimension of the intersection (-1 if empty)")
    p.add_argument("system")
    _add_cap(p)
    p.set_defaults(func=_cmd_dimension)

    p = sub.add_parser("encode", help="translate a DIMACS CNF file to a polynomial system")
    p.add_argument("cnf")
    p.add_argument("--variant", choices=("intersection", "consistency", "connectivity"),
                   default="intersection")
    p.add_argument("-o", "--output", help="write the system here instead of stdout")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("count-sat", help="count satisfying assignments by brute force")
    p.add_argument("cnf")
    p.set_defaults(func=_cmd_count_sat)

    p = sub.add_parser("plot", help="render a plane curve and its dual subdivision as SVG")
    p.add_argument("system", help="file holding one two-variable polynomial")
    p.add_argument("--viewport", default="-5,-5,5,5",
                   help="xmin,ymin,xmax,ymax (rationals)")
    p.add_argument("-o", "--output", help="write the SVG here instead of stdout")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except EmptyPrevariety as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except (MinplusError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    raise SystemExit(main())
