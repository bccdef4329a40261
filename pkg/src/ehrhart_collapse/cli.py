"""Command line interface. Every command prints one JSON document.

Exit codes: 0 success/pass, 1 verification fail, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .counting import count_points
from .ehrhart import ehrhart_of, minimal_quasi_period, reciprocity_check
from .equidecomp import verify_certificate
from .errors import EhrhartError, MalformedInputError
from .reflexive import LatticePolygon, centered, twelve_check
from .serialize import (
    dumps,
    emit_certificate,
    emit_polytope,
    load_json,
    parse_certificate,
    parse_polytope,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MALFORMED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def _positive(value):
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {k}")
    return k


def build_parser():
    p = _Parser(prog="ehrhart-collapse", description="Ehrhart quasi-polynomials and unimodular scissors congruence.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="lattice points in a dilate")
    c.add_argument("--polytope", required=True)
    c.add_argument("--dilation", type=_positive, required=True)
    c.add_argument("--interior", action="store_true")

    e = sub.add_parser("ehrhart", help="Ehrhart quasi-polynomial")
    e.add_argument("--polytope", required=True)

    co = sub.add_parser("collapse", help="minimal quasi-period and collapse detection")
    co.add_argument("--polytope", required=True)

    v = sub.add_parser("verify", help="verify an equidecomposability certificate")
    v.add_argument("--certificate", required=True)

    r = sub.add_parser("reciprocity", help="check Ehrhart reciprocity")
    r.add_argument("--polytope", required=True)
    r.add_argument("--max-k", type=_positive, default=5)

    t = sub.add_parser("twelve", help="lengths of a reflexive polygon and its dual")
    t.add_argument("--polygon", required=True)

    ex = sub.add_parser("example", help="emit a built-in fixture")
    ex.add_argument("--name", required=True, help="fixture name; 'list' shows all")
    ex.add_argument("--param", action="append", default=[], metavar="D=k")
    ex.add_argument("--out")
    return p


def _example(args):
    params = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise MalformedInputError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise MalformedInputError(f"parameter {key} must be an integer") from None
    name = args.name
    samples = fixtures.reflexive_samples()
    reflexive_names = {f"reflexive-{i}": s for i, s in enumerate(samples)}
    if name == "list":
        names = sorted([*fixtures.POLYTOPES, *fixtures.CERTIFICATES, *reflexive_names])
        return {"fixtures": names}
    unknown = set(params) - {"D"}
    if unknown:
        raise MalformedInputError(f"unknown parameters {sorted(unknown)}")
    call_args = ()
    if name in fixtures.PARAMETRIZED:
        call_args = (params.get("D", 3),)
    elif params:
        raise MalformedInputError(f"fixture {name!r} takes no parameters")
    if name in fixtures.POLYTOPES:
        return emit_polytope(fixtures.POLYTOPES[name](*call_args))
    if name in fixtures.CERTIFICATES:
        return emit_certificate(fixtures.CERTIFICATES[name](*call_args))
    if name in reflexive_names:
        return emit_polytope(reflexive_names[name].as_polytope())
    raise MalformedInputError(f"unknown fixture {name!r}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    code = EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        cmd = args.command
        if cmd == "count":
            P = parse_polytope(load_json(args.polytope))
            out = {"count": count_points(P, args.dilation, interior=args.interior)}
        elif cmd == "ehrhart":
            P = parse_polytope(load_json(args.polytope))
            out = ehrhart_of(P).to_dict()
        elif cmd == "collapse":
            P = parse_polytope(load_json(args.polytope))
            out = minimal_quasi_period(P).to_dict()
        elif cmd == "verify":
            report = verify_certificate(parse_certificate(load_json(args.certificate)))
            out = report.to_dict()
            code = EXIT_OK if report else EXIT_FAIL
        elif cmd == "reciprocity":
            P = parse_polytope(load_json(args.polytope))
            res = reciprocity_check(P, args.max_k)
            out = res.to_dict()
            code = EXIT_OK if res else EXIT_FAIL
        elif cmd == "twelve":
            P = parse_polytope(load_json(args.polygon))
            polygon = centered(LatticePolygon.from_points(P.vertices))
            res = twelve_check(polygon)
            out = res.to_dict()
            code = EXIT_OK if res else EXIT_FAIL
        else:
            out = _example(args)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(dumps(out))
                out = {"written": args.out}
    except EhrhartError as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_MALFORMED
    stdout.write(dumps(out))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
