"""Convex lattice polygons, polar duality and the "12" check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from . import linalg
from .counting import count_interior, lattice_points
from .errors import MalformedInputError, UnsupportedInputError
from .geometry import AffineUnimodularMap, RationalPolytope, apply_map, reduce_to_vertices


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Lattice polygon given by its cyclically ordered vertices.

    Convex polygons are stored counter-clockwise starting from the
    lexicographically smallest vertex, so equality is equality of polygons.
    """

    vertices: tuple
    convex: bool = True

    def __post_init__(self):
        verts = []
        for v in self.vertices:
            if len(v) != 2:
                raise MalformedInputError(f"polygon vertex {v!r} is not planar")
            q = tuple(Fraction(c) for c in v)
            if any(c.denominator != 1 for c in q):
                raise MalformedInputError(f"polygon vertex {v!r} is not a lattice point")
            verts.append(tuple(int(c) for c in q))
        if len(verts) < 3:
            raise MalformedInputError("a polygon needs at least three vertices")
        n = len(verts)
        turns = [_cross(verts[i - 1], verts[i], verts[(i + 1) % n]) for i in range(n)]
        convex = all(t >= 0 for t in turns) or all(t <= 0 for t in turns)
        if convex:
            verts = [v for v, t in zip(verts, turns) if t != 0]
            if len(verts) < 3:
                raise MalformedInputError("degenerate polygon")
            if sum(_cross((0, 0), verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))) < 0:
                verts.reverse()
            start = verts.index(min(verts))
            verts = verts[start:] + verts[:start]
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "convex", convex)

    @classmethod
    def from_points(cls, points) -> LatticePolygon:
        """Convex hull of ``points`` in counter-clockwise order."""
        hull = reduce_to_vertices(points).vertices
        c = tuple(sum(v[i] for v in hull) / len(hull) for i in range(2))

        def half(p):
            dx, dy = p[0] - c[0], p[1] - c[1]
            return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

        def cmp(a, b):
            ha, hb = half(a), half(b)
            if ha != hb:
                return ha - hb
            return -1 if _cross(c, a, b) > 0 else 1

        return cls(tuple(sorted(hull, key=cmp_to_key(cmp))))

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def as_polytope(self) -> RationalPolytope:
        return RationalPolytope(self.vertices)

    def image(self, m: AffineUnimodularMap) -> LatticePolygon:
        return LatticePolygon(tuple(apply_map(m, v) for v in self.vertices))


def lattice_length(p: LatticePolygon) -> int:
    """Boundary length counted in primitive lattice segments."""
    return sum(gcd(b[0] - a[0], b[1] - a[1]) for a, b in p.edges())


def _require_convex(p):
    if not p.convex:
        raise UnsupportedInputError("non-convex polygons are not supported")


def interior_lattice_points(p: LatticePolygon) -> int:
    return count_interior(p.as_polytope(), 1)


def is_reflexive(p: LatticePolygon) -> bool:
    _require_convex(p)
    return interior_lattice_points(p) == 1


def centered(p: LatticePolygon) -> LatticePolygon:
    """Translate a reflexive polygon so its interior lattice point is the origin."""
    _require_convex(p)
    pts = lattice_points(p.as_polytope(), 1, interior=True)
    if len(pts) != 1:
        raise UnsupportedInputError(f"polygon has {len(pts)} interior lattice points, not 1")
    c = pts[0]
    return LatticePolygon(tuple((v[0] - c[0], v[1] - c[1]) for v in p.vertices))


def dual_polygon(p: LatticePolygon) -> LatticePolygon:
    """Polar dual {y : <x, y> <= 1 for all x in p} of a centered reflexive polygon."""
    _require_convex(p)
    if not is_reflexive(p):
        raise UnsupportedInputError("dual_polygon needs a reflexive polygon")
    if not p.as_polytope().interior_constraints.contains((0, 0)):
        raise UnsupportedInputError("the interior lattice point must be the origin; translate first")
    dual = []
    for a, b in p.edges():
        y = linalg.solve([a, b], [1, 1])
        if y is None or any(c.denominator != 1 for c in y):
            raise UnsupportedInputError(f"dual vertex {y} is not integral")
        y = tuple(int(c) for c in y)
        if not dual or dual[-1] != y:
            dual.append(y)
    return LatticePolygon(tuple(dual))


@dataclass(frozen=True)
class TwelveResult:
    passed: bool
    length: int
    dual_length: int

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "dual_length": self.dual_length,
            "sum": self.length + self.dual_length,
            "verdict": "pass" if self.passed else "fail",
        }


def twelve_check(p: LatticePolygon) -> TwelveResult:
    a = lattice_length(p)
    b = lattice_length(dual_polygon(p))
    return TwelveResult(a + b == 12, a, b)
