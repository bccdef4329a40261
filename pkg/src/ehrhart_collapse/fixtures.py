"""Constructors for the polytopes and certificates used throughout.

All fixtures are built in code, so families can be swept over their
integer parameter.
"""

from __future__ import annotations

from fractions import Fraction

from .equidecomp import DecompositionCertificate
from .errors import MalformedInputError
from .geometry import (
    WEAK,
    AffineUnimodularMap,
    RationalPolytope,
    Simplex,
    compose,
    half_open_decompose,
    reduce_to_vertices,
)
from .reflexive import LatticePolygon


def _check_D(D):
    if int(D) != D or D < 2:
        raise MalformedInputError(f"D must be an integer >= 2, got {D}")


def unit_square() -> RationalPolytope:
    return reduce_to_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])


def segment(a, b) -> RationalPolytope:
    return reduce_to_vertices([(Fraction(a),), (Fraction(b),)])


def mw_triangle(D: int) -> RationalPolytope:
    """Triangle conv{(0,0), (1,(D-1)/D), (D,0)}: denominator D, polynomial count."""
    _check_D(D)
    return reduce_to_vertices([(0, 0), (1, Fraction(D - 1, D)), (D, 0)])


def mw_map(D: int) -> AffineUnimodularMap:
    return AffineUnimodularMap(((D - 1, -D), (-1, 1)), (1, 1))


def mw_target(D: int) -> RationalPolytope:
    _check_D(D)
    return reduce_to_vertices([(1, 0), (1, 1), (D, 0)])


def _mw_parts(D):
    top = (1, Fraction(D - 1, D))
    left = Simplex(((0, 0), (1, 0), top))
    right = Simplex(((1, 0), (D, 0), top))
    left_pieces = half_open_decompose(left, [[(1, 0), top]])
    return left_pieces, right.faces()


def mw_certificate(D: int) -> DecompositionCertificate:
    """Cut at x = 1, move the left part (minus the cut) by the unimodular map,
    keep the closed right part."""
    _check_D(D)
    left_pieces, right_pieces = _mw_parts(D)
    U = mw_map(D)
    ident = AffineUnimodularMap.identity(2)
    return DecompositionCertificate(
        source=mw_triangle(D),
        target=mw_target(D),
        pieces=tuple(left_pieces + right_pieces),
        maps=tuple([U] * len(left_pieces) + [ident] * len(right_pieces)),
    )


def quadrilateral_q(D: int) -> RationalPolytope:
    """The triangle together with its mirror image in the x-axis."""
    _check_D(D)
    h = Fraction(D - 1, D)
    return reduce_to_vertices([(0, 0), (1, h), (D, 0), (1, -h)])


def quadrilateral_certificate(D: int) -> DecompositionCertificate:
    """Q(D) onto a disjoint union of integral open simplices.

    The upper half (x-axis included) goes to T'(D) as in ``mw_certificate``;
    the open lower half is mirrored, sent to T'(D) the same way and then
    shifted down by 2, where it fills the open triangle and its open left
    edge.
    """
    _check_D(D)
    base = mw_certificate(D)
    mirror = AffineUnimodularMap(((1, 0), (0, -1)), (0, 0))
    shift = AffineUnimodularMap.translate((0, -2))
    pieces = list(base.pieces)
    maps = list(base.maps)
    for s, m in zip(base.pieces, base.maps):
        if all(v[1] == 0 for v in s.vertices):
            continue
        pieces.append(mirror.image_simplex(s))
        maps.append(compose(shift, m, mirror))
    tprime = Simplex(((1, 0), (1, 1), (D, 0)))
    lower = [Simplex(tprime.vertices, True), Simplex(((1, 0), (1, 1)), True)]
    target = tuple(tprime.faces()) + tuple(shift.image_simplex(s) for s in lower)
    return DecompositionCertificate(quadrilateral_q(D), target, tuple(pieces), tuple(maps))


STANLEY_NORMAL = (-1, 1, 1)
STANLEY_MATRIX = ((1, 0, 0), (1, 0, -1), (-1, 1, 2))


def stanley_pyramid() -> RationalPolytope:
    return reduce_to_vertices(
        [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (Fraction(1, 2), 0, Fraction(1, 2))]
    )


def stanley_target() -> RationalPolytope:
    return reduce_to_vertices([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1)])


def stanley_certificate() -> DecompositionCertificate:
    """Cut the pyramid by the plane normal to (-1,1,1); the closed side
    w.x >= 0 is mapped by the fixed integer matrix (which fixes the plane
    pointwise), the open side w.x < 0 stays put."""
    P = stanley_pyramid()
    w = STANLEY_NORMAL
    side = {v: sum(a * b for a, b in zip(w, v)) for v in P.vertices}
    on = [v for v in P.vertices if side[v] == 0]
    pos = [v for v in P.vertices if side[v] > 0]
    neg = [v for v in P.vertices if side[v] < 0]
    upper = Simplex(tuple(on + pos))
    lower = Simplex(tuple(on + neg))
    M = AffineUnimodularMap(STANLEY_MATRIX, (0, 0, 0))
    ident = AffineUnimodularMap.identity(3)
    up = upper.faces()
    down = [f for f in lower.faces() if not all(v in on for v in f.vertices)]
    return DecompositionCertificate(
        source=P,
        target=stanley_target(),
        pieces=tuple(up + down),
        maps=tuple([M] * len(up) + [ident] * len(down)),
    )


def segment_pair_certificate(scale: int = 2) -> DecompositionCertificate:
    """[0, 1/2] onto [1/2, 1] by a half-unit shift, a weak-mode certificate."""
    return DecompositionCertificate(
        source=segment(0, Fraction(1, 2)),
        target=segment(Fraction(1, 2), 1),
        pieces=(Simplex(((0,), (Fraction(1, 2),))),),
        maps=(AffineUnimodularMap(((1,),), (Fraction(1, 2),), WEAK),),
        mode=WEAK,
        scale=scale,
    )


def reflexive_samples():
    return [
        LatticePolygon(((-1, -1), (1, -1), (1, 1), (-1, 1))),
        LatticePolygon(((1, 0), (0, 1), (-1, 0), (0, -1))),
        LatticePolygon(((-1, -1), (2, -1), (-1, 2))),
        LatticePolygon(((1, 1), (-1, 0), (0, -1))),
        LatticePolygon(((1, 0), (0, 1), (-1, -1))),
        LatticePolygon(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))),
        LatticePolygon(((-1, -1), (3, -1), (-1, 1))),
        LatticePolygon(((-1, 0), (1, -1), (1, 1))),
    ]


POLYTOPES = {
    "unit-square": lambda: unit_square(),
    "mw-triangle": mw_triangle,
    "mw-target": mw_target,
    "quadrilateral": quadrilateral_q,
    "stanley-pyramid": lambda: stanley_pyramid(),
    "stanley-target": lambda: stanley_target(),
}

CERTIFICATES = {
    "mw-certificate": mw_certificate,
    "quadrilateral-certificate": quadrilateral_certificate,
    "stanley-certificate": lambda: stanley_certificate(),
    "segment-weak-certificate": lambda: segment_pair_certificate(),
}

# fixtures taking the integer parameter D
PARAMETRIZED = {"mw-triangle", "mw-target", "quadrilateral", "mw-certificate", "quadrilateral-certificate"}
