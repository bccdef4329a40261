"""JSON interchange: rationals travel as strings ("2/3", "-1"), never floats."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .equidecomp import DecompositionCertificate
from .errors import MalformedInputError
from .geometry import STRICT, WEAK, AffineUnimodularMap, RationalPolytope, Simplex, reduce_to_vertices

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise MalformedInputError(f"rationals must be strings or integers, got {value!r}")
    m = _RATIONAL.match(value.replace("−", "-"))
    if not m:
        raise MalformedInputError(f"malformed rational {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedInputError(f"zero denominator in {value!r}")
    return Fraction(num, den)


def emit_rational(q) -> str:
    return str(Fraction(q))


def _point(coords):
    if not isinstance(coords, list):
        raise MalformedInputError(f"expected a coordinate list, got {coords!r}")
    return tuple(parse_rational(c) for c in coords)


def _emit_point(p):
    return [emit_rational(c) for c in p]


def _require(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInputError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInputError(f"field {key!r} has the wrong type")
    return value


def parse_polytope(doc) -> RationalPolytope:
    verts = _require(doc, "vertices", list)
    if not verts:
        raise MalformedInputError("a polytope needs at least one vertex")
    points = [_point(v) for v in verts]
    dim = doc.get("dim")
    if dim is not None and any(len(p) != dim for p in points):
        raise MalformedInputError(f"vertices do not have the declared dimension {dim}")
    return reduce_to_vertices(points)


def emit_polytope(p: RationalPolytope) -> dict:
    return {"dim": p.ambient_dim, "vertices": [_emit_point(v) for v in p.vertices]}


def parse_simplex(doc) -> Simplex:
    verts = _require(doc, "vertices", list)
    return Simplex(tuple(_point(v) for v in verts), bool(doc.get("open", True)))


def emit_simplex(s: Simplex) -> dict:
    return {"vertices": [_emit_point(v) for v in s.vertices], "open": s.open}


def parse_map(doc, mode=STRICT) -> AffineUnimodularMap:
    matrix = _require(doc, "matrix", list)
    rows = []
    for row in matrix:
        if not isinstance(row, list):
            raise MalformedInputError("matrix rows must be lists")
        rows.append(tuple(parse_rational(x) for x in row))
    return AffineUnimodularMap(tuple(rows), _point(_require(doc, "translation", list)), mode)


def emit_map(m: AffineUnimodularMap) -> dict:
    return {"matrix": [list(r) for r in m.matrix], "translation": _emit_point(m.translation)}


def parse_certificate(doc) -> DecompositionCertificate:
    mode_doc = doc.get("mode", "strict") if isinstance(doc, dict) else None
    if mode_doc == "strict":
        mode, scale = STRICT, 1
    elif isinstance(mode_doc, dict) and set(mode_doc) == {"weak"}:
        mode, scale = WEAK, mode_doc["weak"]
        if not isinstance(scale, int) or isinstance(scale, bool) or scale < 1:
            raise MalformedInputError("weak scale must be a positive integer")
    else:
        raise MalformedInputError(f"unknown certificate mode {mode_doc!r}")
    source = parse_polytope(_require(doc, "source", dict))
    tdoc = _require(doc, "target", dict)
    if "pieces" in tdoc:
        target = tuple(parse_simplex(s) for s in _require(tdoc, "pieces", list))
    else:
        target = parse_polytope(tdoc)
    pieces = tuple(parse_simplex(s) for s in _require(doc, "pieces", list))
    maps = tuple(parse_map(m, mode) for m in _require(doc, "maps", list))
    return DecompositionCertificate(source, target, pieces, maps, mode, scale)


def emit_certificate(c: DecompositionCertificate) -> dict:
    if isinstance(c.target, RationalPolytope):
        target = emit_polytope(c.target)
    else:
        target = {"pieces": [emit_simplex(s) for s in c.target]}
    return {
        "source": emit_polytope(c.source),
        "target": target,
        "pieces": [emit_simplex(s) for s in c.pieces],
        "maps": [emit_map(m) for m in c.maps],
        "mode": "strict" if c.mode == STRICT else {"weak": c.scale},
    }


def dumps(obj) -> str:
    """Indented JSON with scalar-only lists kept on one line."""
    return _dump(obj, 0) + "\n"


def _dump(obj, depth):
    pad = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        items = [pad + _dump(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path} is not valid JSON: {exc}") from None
