"""Command-line front end.

Exit status: 0 success, 1 the input is well formed but fails validation,
2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import io
from .farey import FareyPath, PathError
from .friezes import (
    Frieze,
    FriezeError,
    WeightedPolygon,
    frieze_from_path,
    quiddity_cycle,
    validate_frieze,
    weighted_polygon_frieze,
    weighted_polygon_quiddity,
)
from .hypertilings import (
    Hypertiling,
    HypertilingError,
    act_triple,
    construct_hypertiling,
    cube_display,
    decompose_hypertiling,
    fib_pair_oracle,
    fibonacci_hypertiling,
    hyperdet,
    is_synchronised,
    is_tame_hypertiling,
    normalize_unit_cube,
    sl2_cross_section_cubes,
    stabilizer_search,
    unsynchronised_stacks,
    verify_hypertiling,
    UNIT_CUBE,
)
from .render import RenderSpec, ascii_frieze, ascii_hypertiling, ascii_tiling, render_farey_svg
from .tilings import (
    Tiling,
    TilingError,
    construct_tiling,
    decompose_tiling,
    is_tame,
    tameness_parameters,
    verify_n_tiling,
    zero_tiling_paths,
)


class Invalid(Exception):
    """Input parsed fine but is not a valid object of the expected kind."""


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _expect(obj, cls, what: str):
    if not isinstance(obj, cls):
        raise io.ParseError(f"expected a {what} file, got {type(obj).__name__}")
    return obj


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as e:
            raise io.ParseError(f"cannot write {args.output}: {e.strerror}") from e
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return io.dumps(obj) + "\n"


# verify

def _verify_tiling(t: Tiling) -> str:
    N = verify_n_tiling(t)
    if N is None:
        raise Invalid("empty tiling")
    if not all(isinstance(x, int) for r in t.entries for x in r):
        return f"N={_fmt(N)} rational"
    if not is_tame(t):
        return f"N={N} not tame"
    p = tameness_parameters(t)
    return f"N={N} tame params=({p.K},{p.L},{p.R},{p.S})"


def _verify_hyper(h: Hypertiling) -> str:
    N = verify_hypertiling(h)
    tame = is_tame_hypertiling(h)
    out = f"N={N} tame={'true' if tame else 'false'}"
    if not tame and not is_synchronised(h):
        a, b, c = unsynchronised_stacks(h)[0]
        out += f" unsynchronised=({a[0]},{a[1]};{b[0]},{b[1]};{c[0]},{c[1]})"
    return out


def cmd_verify(args) -> str:
    obj = io.load(args.file)
    if isinstance(obj, Tiling):
        return _verify_tiling(obj) + "\n"
    if isinstance(obj, Hypertiling):
        return _verify_hyper(obj) + "\n"
    if isinstance(obj, Frieze):
        bad = validate_frieze(obj)
        if bad is not None:
            raise Invalid(str(bad))
        q = " ".join(_fmt(x) for x in quiddity_cycle(obj))
        return f"N={obj.denom} width={obj.width} valid quiddity {q}\n"
    if isinstance(obj, WeightedPolygon):
        N, labels = weighted_polygon_quiddity(obj)
        return f"N={N} labels {' '.join(map(str, labels))}\n"
    if isinstance(obj, FareyPath):
        return f"R={obj.level} path of {len(obj)} vertices\n"
    if isinstance(obj, tuple):
        return f"Det={hyperdet(obj)}\n"
    raise io.ParseError(f"cannot verify a {type(obj).__name__}")


# construct / decompose

def cmd_construct(args) -> str:
    g = _expect(io.load(args.gamma), FareyPath, "path")
    d = _expect(io.load(args.delta), FareyPath, "path")
    t = construct_tiling(args.K, args.L, g, d)
    if args.format == "ascii":
        return ascii_tiling(t)
    if args.format == "csv":
        return io.dump_tiling_csv(t)
    return _json(t)


def cmd_decompose(args) -> str:
    t = _expect(io.load(args.file), Tiling, "tiling")
    if verify_n_tiling(t) == 0:
        K, g, d = zero_tiling_paths(t)
        out = {"K": K, "L": 0, "R": g.level, "S": d.level}
    else:
        K, L, g, d = decompose_tiling(t)
        out = {"K": K, "L": L, "R": g.level, "S": d.level}
    out.update(gamma=g.to_dict(), delta=d.to_dict())
    return _json(out)


# friezes

def cmd_frieze(args) -> str:
    if args.path:
        p = _expect(io.load(args.path), FareyPath, "path")
        f = frieze_from_path(p, args.K)
        labels = " ".join(_fmt(x) for x in quiddity_cycle(f))
        tail = f"quiddity {labels}\n"
    else:
        wp = _expect(io.load(args.polygon), WeightedPolygon, "polygon")
        f = weighted_polygon_frieze(wp)
        N, labels = weighted_polygon_quiddity(wp)
        tail = f"N={N} labels {' '.join(map(str, labels))}\nquiddity {' '.join(_fmt(x) for x in quiddity_cycle(f))}\n"
    if args.format == "json":
        return _json(f)
    return ascii_frieze(f) + tail


# hypertilings

def _parse_window(s: str) -> list[tuple[int, int]]:
    try:
        parts = [tuple(int(x) for x in p.split(":")) for p in s.split(",")]
    except ValueError:
        raise io.ParseError(f"bad window {s!r}; expected lo:hi,lo:hi,lo:hi") from None
    if len(parts) != 3 or any(len(p) != 2 for p in parts):
        raise io.ParseError(f"bad window {s!r}; expected lo:hi,lo:hi,lo:hi")
    return parts


def _hyper_out(args, h: Hypertiling) -> str:
    return ascii_hypertiling(h) if args.format == "ascii" else _json(h)


def cmd_hyper(args) -> str:
    if args.action == "verify":
        return _verify_hyper(_expect(io.load(args.file), Hypertiling, "hypertiling")) + "\n"
    if args.action == "construct":
        cube = UNIT_CUBE if args.cube is None else _expect(io.load(args.cube), tuple, "cube")
        paths = io.load(args.paths)
        if not isinstance(paths, list) or len(paths) != 3:
            raise io.ParseError("field 'paths' must hold exactly three paths")
        return _hyper_out(args, construct_hypertiling(cube, *paths))
    if args.action == "decompose":
        h = _expect(io.load(args.file), Hypertiling, "hypertiling")
        A, u, v, w = decompose_hypertiling(h)
        return _json({"cube": io.to_dict(A)["cube"], "Det": hyperdet(A), "paths": [p.to_dict() for p in (u, v, w)]})
    if args.action == "normalize":
        c = _expect(io.load(args.file), tuple, "cube")
        if hyperdet(c) != 1:
            raise Invalid(f"cube has Det={hyperdet(c)}, expected 1")
        t = normalize_unit_cube(c)
        assert act_triple(t, UNIT_CUBE) == c
        return _json({"triple": [[list(r) for r in m] for m in t]})
    if args.action == "fib":
        return _hyper_out(args, fibonacci_hypertiling(args.e, _parse_window(args.window)))
    raise io.ParseError(f"unknown hyper action {args.action!r}")


# render

def cmd_render(args) -> str:
    obj = io.load(args.file)
    if args.format == "ascii":
        if isinstance(obj, Tiling):
            return ascii_tiling(obj)
        if isinstance(obj, Hypertiling):
            return ascii_hypertiling(obj)
        if isinstance(obj, Frieze):
            return ascii_frieze(obj)
        raise io.ParseError(f"no ASCII rendering for {type(obj).__name__}")
    if isinstance(obj, FareyPath):
        paths = [obj]
    elif isinstance(obj, list):
        paths = obj
    else:
        raise io.ParseError("SVG rendering needs a path or a list of paths")
    try:
        spec = RenderSpec(args.model, Fraction(args.x_min), Fraction(args.x_max), args.size, args.depth,
                          args.horocycles, args.labels)
    except ValueError as e:
        raise io.ParseError(str(e)) from e
    return render_farey_svg(paths, spec)


# oracles

def cmd_oracle(args) -> str:
    if args.which == "fib-pairs":
        return _json({"pairs": [list(p) for p in sorted(fib_pair_oracle(args.bound))]})
    if args.which == "cube-enum":
        cubes = sl2_cross_section_cubes(args.bound)
        return _json({"count": len(cubes), "cubes": [list(cube_display(c)) for c in sorted(cubes)]})
    if args.which == "stabilizer-search":
        found = stabilizer_search(args.bound)
        return _json({"count": len(found), "triples": [[[list(r) for r in m] for m in t] for t in found]})
    raise io.ParseError(f"unknown oracle {args.which!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="farey-tilings", description="Tilings, friezes and hypertilings via Farey paths.")
    sub = ap.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("-o", "--output", help="write to a file instead of stdout")

    p = sub.add_parser("verify", help="report N, tameness and parameters")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="tiling from two paths")
    p.add_argument("--gamma", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("-K", type=int, default=1)
    p.add_argument("-L", type=int, default=1)
    p.add_argument("--format", choices=("json", "ascii", "csv"), default="json")
    out(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", help="paths and parameters of a tame tiling")
    p.add_argument("file")
    out(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("frieze", help="frieze and quiddity cycle from a closed path or a polygon")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--path")
    g.add_argument("--polygon")
    p.add_argument("-K", type=int, default=1)
    p.add_argument("--format", choices=("json", "ascii"), default="ascii")
    out(p)
    p.set_defaults(func=cmd_frieze)

    p = sub.add_parser("hyper", help="hypertiling operations")
    hs = p.add_subparsers(dest="action", required=True)
    q = hs.add_parser("verify")
    q.add_argument("file")
    q = hs.add_parser("construct")
    q.add_argument("--cube", help="cube JSON (default: the unit cube)")
    q.add_argument("--paths", required=True, help="JSON with three paths")
    q.add_argument("--format", choices=("json", "ascii"), default="json")
    out(q)
    q = hs.add_parser("decompose")
    q.add_argument("file")
    out(q)
    q = hs.add_parser("normalize")
    q.add_argument("file")
    out(q)
    q = hs.add_parser("fib")
    q.add_argument("-e", type=int, default=0)
    q.add_argument("--window", default="0:4,0:4,0:4")
    q.add_argument("--format", choices=("json", "ascii"), default="ascii")
    out(q)
    p.set_defaults(func=cmd_hyper)

    p = sub.add_parser("render", help="SVG of paths over the Farey graph, or ASCII grids")
    p.add_argument("file")
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")
    p.add_argument("--model", choices=("upper-half-plane", "disc"), default="upper-half-plane")
    p.add_argument("--x-min", default="-5")
    p.add_argument("--x-max", default="5")
    p.add_argument("--size", type=int, default=800)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--horocycles", action="store_true")
    p.add_argument("--labels", action="store_true")
    out(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="brute-force searches")
    p.add_argument("which", choices=("fib-pairs", "cube-enum", "stabilizer-search"))
    p.add_argument("--bound", type=int)
    out(p)
    p.set_defaults(func=cmd_oracle)
    return ap


_ORACLE_BOUNDS = {"fib-pairs": 1000, "cube-enum": 100, "stabilizer-search": 2}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.command == "oracle" and args.bound is None:
        args.bound = _ORACLE_BOUNDS[args.which]
    try:
        text = args.func(args)
        _emit(args, text)
    except io.ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (Invalid, TilingError, PathError, FriezeError, HypertilingError, ValueError) as e:
        print(f"invalid: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
