"""Exact rational geometry: affine unimodular maps, simplices, polytopes.

Coordinates are ``fractions.Fraction``; points are plain tuples. Every
predicate is decided exactly, either by linear algebra over Q or by the
exact simplex method in :mod:`ehrhart_collapse.lp`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial, lcm

from . import linalg, lp
from .errors import MalformedInputError, UnsupportedDimensionError

MAX_TRIANGULATION_DIM = 3

STRICT = "strict"
WEAK = "weak"

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


def as_point(coords) -> tuple:
    try:
        return tuple(Fraction(c) for c in coords)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad coordinates {coords!r}: {exc}") from None


# ---------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class AffineUnimodularMap:
    """``x -> matrix @ x + translation``.

    Construction only checks shape and integrality of the matrix; whether
    the map is actually unimodular is the business of :func:`is_unimodular`,
    so that bad certificates can still be represented and rejected.
    """

    matrix: tuple
    translation: tuple
    mode: str = STRICT

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise MalformedInputError("matrix must be square and non-empty")
        ints = []
        for r in rows:
            row = []
            for x in r:
                if Fraction(x).denominator != 1:
                    raise MalformedInputError(f"non-integer matrix entry {x}")
                row.append(int(x))
            ints.append(tuple(row))
        t = as_point(self.translation)
        if len(t) != n:
            raise MalformedInputError("translation length does not match matrix size")
        if self.mode not in (STRICT, WEAK):
            raise MalformedInputError(f"unknown map mode {self.mode!r}")
        object.__setattr__(self, "matrix", tuple(ints))
        object.__setattr__(self, "translation", t)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n, mode=STRICT):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n, mode)

    @classmethod
    def translate(cls, t, mode=STRICT):
        n = len(t)
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), t, mode)

    @cached_property
    def determinant(self) -> int:
        return linalg.det(self.matrix)

    def __call__(self, x):
        return apply_map(self, x)

    def image_simplex(self, s: Simplex) -> Simplex:
        return Simplex(tuple(apply_map(self, v) for v in s.vertices), s.open)

    def image_polytope(self, p: RationalPolytope) -> RationalPolytope:
        return RationalPolytope(tuple(apply_map(self, v) for v in p.vertices))

    def scaled(self, k: int) -> AffineUnimodularMap:
        """Conjugate by dilation: the map ``kx -> k*map(x)``."""
        mode = STRICT if all((k * t).denominator == 1 for t in self.translation) else self.mode
        return AffineUnimodularMap(self.matrix, tuple(k * t for t in self.translation), mode)


def is_unimodular(m: AffineUnimodularMap) -> bool:
    if abs(m.determinant) != 1:
        return False
    if m.mode == STRICT:
        return all(t.denominator == 1 for t in m.translation)
    return True


def apply_map(m: AffineUnimodularMap, x) -> tuple:
    x = as_point(x)
    if len(x) != m.dim:
        raise MalformedInputError(f"point of dimension {len(x)} under a map of dimension {m.dim}")
    return tuple(sum(a * b for a, b in zip(row, x)) + t for row, t in zip(m.matrix, m.translation))


def compose(*maps: AffineUnimodularMap) -> AffineUnimodularMap:
    """``compose(f, g)(x) == f(g(x))``."""
    if not maps:
        raise MalformedInputError("compose needs at least one map")
    result = maps[-1]
    for f in reversed(maps[:-1]):
        if f.dim != result.dim:
            raise MalformedInputError("dimension mismatch in composition")
        mat = linalg.matmul(f.matrix, result.matrix)
        t = apply_map(f, result.translation)
        mode = STRICT if f.mode == result.mode == STRICT else WEAK
        result = AffineUnimodularMap(mat, t, mode)
    return result


def invert(m: AffineUnimodularMap) -> AffineUnimodularMap:
    if abs(m.determinant) != 1:
        raise MalformedInputError("only maps with determinant +-1 are invertible over Z")
    n = m.dim
    inv = []
    for j in range(n):
        e = tuple(Fraction(int(i == j)) for i in range(n))
        inv.append(linalg.solve(m.matrix, e))
    mat = tuple(tuple(int(inv[j][i]) for j in range(n)) for i in range(n))
    t = tuple(-sum(a * b for a, b in zip(row, m.translation)) for row in mat)
    return AffineUnimodularMap(mat, t, m.mode)


# ---------------------------------------------------------------------------
# affine hulls and supporting hyperplanes


def affine_rank(points) -> int:
    """Dimension of the affine hull of ``points``."""
    if not points:
        return -1
    p0 = points[0]
    return linalg.rank([linalg.sub(p, p0) for p in points[1:]])


def _hull_equations(points):
    """Rows ``(a, b)`` with ``a.x == b`` exactly cutting out aff(points)."""
    n = len(points[0])
    dirs = [linalg.sub(p, points[0]) for p in points[1:]]
    dirs = [d for d in dirs if any(d)]
    normals = linalg.nullspace(dirs, n)
    return [(a, linalg.dot(a, points[0])) for a in normals]


def _supporting_normal(face_points, hull_normals, n):
    """Normal (in the direction space of the hull) of the hyperplane through
    ``face_points``; None unless they span a codimension-one flat."""
    base = face_points[0]
    rows = [linalg.sub(p, base) for p in face_points[1:]] + [a for a, _ in hull_normals]
    ns = linalg.nullspace(rows, n)
    if len(ns) != 1:
        return None
    return ns[0]


def facet_vertex_sets(points):
    """Facets of conv(points) inside its own affine hull.

    Returns a list of ``(normal, offset, indices)`` with ``normal.x <= offset``
    valid on all points and tight exactly on ``indices``. Brute force over
    subsets, which is fine for the handful of vertices at dimension <= 3.
    """
    points = [linalg.frac_vector(p) for p in points]
    n = len(points[0])
    d = affine_rank(points)
    if d <= 0:
        return []
    eqs = _hull_equations(points)
    seen = {}
    for subset in combinations(range(len(points)), d):
        face = [points[i] for i in subset]
        if affine_rank(face) != d - 1:
            continue
        a = _supporting_normal(face, eqs, n)
        if a is None:
            continue
        b = linalg.dot(a, face[0])
        vals = [linalg.dot(a, p) for p in points]
        if not all(v <= b for v in vals):
            if not all(v >= b for v in vals):
                continue
            a = tuple(-x for x in a)
            b = -b
            vals = [-v for v in vals]
        tight = tuple(i for i, v in enumerate(vals) if v == b)
        if tight not in seen:
            seen[tight] = (a, b)
    return [(a, b, tight) for tight, (a, b) in seen.items()]


# ---------------------------------------------------------------------------
# integer constraint systems (the fast membership path used by counting)


@dataclass(frozen=True)
class ConstraintSystem:
    """Integer description of a region and all of its dilates.

    A point ``x`` lies in the ``k``-th dilate iff ``eq_a @ x == k * eq_b``
    for every equation row and ``ineq_a @ x <= k * ineq_b`` for every
    inequality row, with ``<`` instead of ``<=`` where ``strict`` is set.
    """

    dim: int
    eq_a: tuple
    eq_b: tuple
    ineq_a: tuple
    ineq_b: tuple
    strict: tuple

    def contains(self, x, k=1) -> bool:
        for a, b in zip(self.eq_a, self.eq_b):
            if sum(ai * xi for ai, xi in zip(a, x)) != k * b:
                return False
        for a, b, s in zip(self.ineq_a, self.ineq_b, self.strict):
            lhs = sum(ai * xi for ai, xi in zip(a, x))
            if lhs > k * b or (s and lhs == k * b):
                return False
        return True


def _integer_row(a, b):
    """Scale the rational constraint ``a.x (op) b`` to integers."""
    d = linalg.common_denominator(list(a) + [b])
    return tuple(int(x * d) for x in a), int(b * d)


def _constraints(points, facets, strict_flags) -> ConstraintSystem:
    eqs = [_integer_row(a, b) for a, b in _hull_equations(points)]
    ineqs = [_integer_row(a, b) for a, b, _ in facets]
    return ConstraintSystem(
        dim=len(points[0]),
        eq_a=tuple(a for a, _ in eqs),
        eq_b=tuple(b for _, b in eqs),
        ineq_a=tuple(a for a, _ in ineqs),
        ineq_b=tuple(b for _, b in ineqs),
        strict=tuple(strict_flags),
    )


# ---------------------------------------------------------------------------
# simplices


@dataclass(frozen=True)
class Simplex:
    vertices: tuple
    open: bool = False

    def __post_init__(self):
        if not self.vertices:
            raise MalformedInputError("a simplex needs at least one vertex")
        verts = tuple(as_point(v) for v in self.vertices)
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise MalformedInputError("vertices of mixed dimension")
        if affine_rank(verts) != len(verts) - 1:
            raise MalformedInputError("simplex vertices are not affinely independent")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "open", bool(self.open))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def closure(self) -> Simplex:
        return Simplex(self.vertices, False)

    def interior(self) -> Simplex:
        return Simplex(self.vertices, True)

    def faces(self):
        """All relatively open faces, largest first."""
        return half_open_decompose(self.closure(), ())

    def dilate(self, k) -> Simplex:
        return Simplex(tuple(tuple(k * c for c in v) for v in self.vertices), self.open)

    @cached_property
    def denominator(self) -> int:
        return lcm(1, *(c.denominator for v in self.vertices for c in v))

    @cached_property
    def constraints(self) -> ConstraintSystem:
        verts = self.vertices
        if self.dim == 0:
            return _constraints(verts, [], [])
        eqs = _hull_equations(verts)
        facets = []
        for i, v in enumerate(verts):
            others = [w for j, w in enumerate(verts) if j != i]
            a = _supporting_normal(others, eqs, self.ambient_dim)
            b = linalg.dot(a, others[0])
            if linalg.dot(a, v) > b:
                a = tuple(-x for x in a)
                b = -b
            facets.append((a, b, None))
        return _constraints(verts, facets, [self.open] * len(facets))

    def __contains__(self, x) -> bool:
        lam = barycentric_coordinates(self, x)
        if lam is None:
            return False
        return all(c > 0 for c in lam) if self.open else all(c >= 0 for c in lam)


def barycentric_coordinates(s: Simplex, x):
    """Affine coordinates of ``x`` w.r.t. the vertices of ``s``.

    ``None`` when ``x`` is off the affine hull.
    """
    x = as_point(x)
    v0 = s.vertices[0]
    dirs = [linalg.sub(v, v0) for v in s.vertices[1:]]
    n = s.ambient_dim
    # columns are the edge vectors; solve the (overdetermined) system exactly
    aug = [[dirs[j][i] for j in range(s.dim)] + [x[i] - v0[i]] for i in range(n)]
    R, pivots = linalg.rref(aug, s.dim + 1)
    if s.dim in pivots:
        return None
    mu = [Fraction(0)] * s.dim
    for r, p in enumerate(pivots):
        mu[p] = R[r][s.dim]
    return (1 - sum(mu),) + tuple(mu)


def simplex_volume(s: Simplex) -> Fraction:
    """Euclidean volume if ``s`` is full-dimensional in its ambient space, else 0."""
    if s.dim != s.ambient_dim:
        return Fraction(0)
    v0 = s.vertices[0]
    return abs(Fraction(linalg.det([linalg.sub(v, v0) for v in s.vertices[1:]]))) / factorial(s.dim)


def half_open_decompose(s: Simplex, excluded_facets=()):
    """Open faces of the closed simplex ``s`` that miss every excluded facet.

    ``excluded_facets`` is a collection of facets, each given by its vertex
    points. A relatively open face misses a closed facet exactly when its
    vertex set is not contained in the facet's vertex set.
    """
    if s.open:
        raise MalformedInputError("half-open decomposition expects a closed simplex")
    index = {v: i for i, v in enumerate(s.vertices)}
    excluded = []
    for facet in excluded_facets:
        pts = [as_point(p) for p in facet]
        ids = frozenset(index.get(p, -1) for p in pts)
        if -1 in ids or len(ids) != s.dim or len(pts) != s.dim:
            raise MalformedInputError(f"{facet!r} is not a facet of the simplex")
        excluded.append(ids)
    pieces = []
    for size in range(len(s.vertices), 0, -1):
        for ids in combinations(range(len(s.vertices)), size):
            if any(set(ids) <= ex for ex in excluded):
                continue
            pieces.append(Simplex(tuple(s.vertices[i] for i in ids), True))
    return pieces


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class RationalPolytope:
    """Convex hull of finitely many rational points.

    The constructor keeps the points as given; use :func:`reduce_to_vertices`
    (or :meth:`from_points`) to get the canonical extreme-point form.
    """

    vertices: tuple
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        if not self.vertices:
            raise MalformedInputError("a polytope needs at least one point")
        verts = tuple(as_point(v) for v in self.vertices)
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise MalformedInputError("vertices of mixed dimension")
        if self.ambient_dim not in (-1, n):
            raise MalformedInputError(f"declared dimension {self.ambient_dim} but points have {n}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "ambient_dim", n)

    @classmethod
    def from_points(cls, points) -> RationalPolytope:
        return reduce_to_vertices(points)

    @cached_property
    def dim(self) -> int:
        return affine_rank(self.vertices)

    @cached_property
    def facets(self):
        return facet_vertex_sets(self.vertices)

    @cached_property
    def constraints(self) -> ConstraintSystem:
        return _constraints(self.vertices, self.facets, [False] * len(self.facets))

    @cached_property
    def interior_constraints(self) -> ConstraintSystem:
        return _constraints(self.vertices, self.facets, [True] * len(self.facets))

    @cached_property
    def volume(self) -> Fraction:
        if self.dim != self.ambient_dim:
            return Fraction(0)
        return sum((simplex_volume(s) for s in triangulate(self)), Fraction(0))

    def same_set(self, other: RationalPolytope) -> bool:
        return set(self.vertices) == set(other.vertices)

    def __contains__(self, x) -> bool:
        return membership_classify(self, x) != OUTSIDE


def reduce_to_vertices(points) -> RationalPolytope:
    """Keep exactly the extreme points, in first-seen order."""
    pts = []
    seen = set()
    for p in points:
        q = as_point(p)
        if q not in seen:
            seen.add(q)
            pts.append(q)
    if not pts:
        raise MalformedInputError("cannot take the convex hull of no points")
    if len({len(p) for p in pts}) != 1:
        raise MalformedInputError("points of mixed dimension")
    keep = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if others and lp.max_min_weight([others], target=p) is not None:
            continue
        keep.append(p)
    return RationalPolytope(tuple(keep))


def denominator(p) -> int:
    """Least D with D*p integral (for polytopes or simplices)."""
    return lcm(1, *(c.denominator for v in p.vertices for c in v))


def dilate(p: RationalPolytope, k: int) -> RationalPolytope:
    if int(k) != k or k <= 0:
        raise MalformedInputError(f"dilation factor must be a positive integer, got {k}")
    return RationalPolytope(tuple(tuple(k * c for c in v) for v in p.vertices))


def membership_classify(p: RationalPolytope, x) -> str:
    """Classify ``x`` against ``p`` relative to the affine hull of ``p``.

    Decided by the exact LP: ``x`` is in the relative interior iff it is a
    convex combination of all vertices with strictly positive weights.
    """
    x = as_point(x)
    if len(x) != p.ambient_dim:
        raise MalformedInputError("point and polytope dimensions differ")
    t = lp.max_min_weight([list(p.vertices)], target=x)
    if t is None:
        return OUTSIDE
    return INTERIOR if t > 0 else BOUNDARY


def triangulate(p: RationalPolytope):
    """Pulling triangulation: cone the first vertex over a triangulation of
    every facet not containing it. Uses only vertices of ``p``."""
    if p.dim > MAX_TRIANGULATION_DIM:
        raise UnsupportedDimensionError(
            f"triangulation supports dimension <= {MAX_TRIANGULATION_DIM}, got {p.dim}"
        )
    verts = p.vertices
    return [Simplex(tuple(verts[i] for i in ids)) for ids in _pull(verts, tuple(range(len(verts))))]


def _pull(verts, ids):
    pts = [verts[i] for i in ids]
    if affine_rank(pts) == len(ids) - 1:
        return [ids]
    apex = ids[0]
    out = []
    for _, _, tight in facet_vertex_sets(pts):
        face = tuple(ids[i] for i in tight)
        if apex in face:
            continue
        out.extend((apex,) + cell for cell in _pull(verts, face))
    return out
