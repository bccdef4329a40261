"""Checking equidecomposability certificates under affine unimodular maps.

A certificate lists relatively open simplices T_1..T_r partitioning a
source polytope and maps U_1..U_r such that the images U_i(T_i) partition
the target. Verification is exact: containment by vertex tests,
disjointness by exact LP, coverage by lattice points of every dilate in
K = {1, ..., D'(d+1)} plus a volume identity. Passing on that K forces
the two Ehrhart quasi-polynomials to coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from . import lp
from .counting import constraints_of, count_points, lattice_points
from .errors import MalformedInputError
from .geometry import (
    STRICT,
    WEAK,
    AffineUnimodularMap,
    RationalPolytope,
    Simplex,
    denominator,
    dilate,
    simplex_volume,
)

UNIMODULARITY = "unimodularity"
CONTAINMENT = "containment"
DISJOINTNESS = "disjointness"
COVERAGE = "coverage"
VOLUME = "volume"
EHRHART_EQUALITY = "ehrhart-equality"


@dataclass(frozen=True)
class DecompositionCertificate:
    """Claim that ``source`` = disjoint union of ``pieces`` and ``target`` =
    disjoint union of ``maps[i](pieces[i])``.

    ``target`` is a polytope or a tuple of open simplices (an integral
    union, as in the collapse conjecture). In weak mode the check runs on
    the ``scale``-th dilates, where translations may become integral.
    Closed pieces are accepted and stand for all of their open faces.
    """

    source: RationalPolytope
    target: RationalPolytope | tuple
    pieces: tuple
    maps: tuple
    mode: str = STRICT
    scale: int = 1

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "maps", tuple(self.maps))
        if not isinstance(self.target, RationalPolytope):
            object.__setattr__(self, "target", tuple(self.target))
        if self.mode not in (STRICT, WEAK):
            raise MalformedInputError(f"unknown certificate mode {self.mode!r}")
        if int(self.scale) != self.scale or self.scale < 1:
            raise MalformedInputError(f"scale must be a positive integer, got {self.scale}")

    def with_map(self, i: int, new_map: AffineUnimodularMap) -> DecompositionCertificate:
        maps = list(self.maps)
        maps[i] = new_map
        return replace(self, maps=tuple(maps))


@dataclass(frozen=True)
class VerificationReport:
    verdict: str
    failed_check: str | None = None
    witness: object = None
    side: str | None = None
    dilation: int | None = None
    message: str = ""
    dilations: tuple = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.failed_check is not None:
            out["failed_check"] = self.failed_check
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.side is not None:
            out["side"] = self.side
        if self.dilation is not None:
            out["dilation"] = self.dilation
        if self.message:
            out["message"] = self.message
        if self.dilations:
            out["dilations"] = [min(self.dilations), max(self.dilations)]
        return out


def _jsonable(w):
    if isinstance(w, Fraction):
        return str(w)
    if isinstance(w, (tuple, list)):
        return [_jsonable(x) for x in w]
    return w


PASS = VerificationReport("pass")


def _fail(check, witness=None, message="", side=None, dilation=None):
    return VerificationReport("fail", check, witness, side, dilation, message)


# ---------------------------------------------------------------------------
# disjointness


def _box(s: Simplex):
    return [(min(c), max(c)) for c in zip(*s.vertices)]


@lru_cache(maxsize=65536)
def _common_relint_point(s1: Simplex, s2: Simplex):
    for (lo1, hi1), (lo2, hi2) in zip(_box(s1), _box(s2)):
        if hi1 < lo2 or hi2 < lo1:
            return None
    res = lp.max_min_weight([list(s1.vertices), list(s2.vertices)], with_point=True)
    if res is None or res[0] == 0:
        return None
    return res[1]


def open_disjoint(s1: Simplex, s2: Simplex) -> bool:
    """True iff the relative interiors of ``s1`` and ``s2`` do not meet."""
    if s1.ambient_dim != s2.ambient_dim:
        raise MalformedInputError("simplices live in different dimensions")
    return _common_relint_point(s1.interior(), s2.interior()) is None


# ---------------------------------------------------------------------------
# partitions


def _region_dim(region):
    if isinstance(region, RationalPolytope):
        return region.dim
    return max(s.dim for s in region)


def _region_volume(region):
    if isinstance(region, RationalPolytope):
        return region.volume
    return sum((simplex_volume(s) for s in region), Fraction(0))


def _expand(pieces, maps=None):
    """Replace closed pieces by their open faces (sharing the piece's map)."""
    out_p, out_m = [], []
    for i, s in enumerate(pieces):
        faces = [s] if s.open else s.faces()
        out_p.extend(faces)
        if maps is not None:
            out_m.extend([maps[i]] * len(faces))
    return out_p, out_m


def verify_partition(region, pieces, dilations, side="source") -> VerificationReport:
    """Check that the open ``pieces`` partition ``region``.

    ``region`` is a polytope or a sequence of open simplices (their union).
    """
    dilations = sorted(set(dilations))
    if not dilations:
        raise MalformedInputError("need at least one dilation to check coverage")
    pieces, _ = _expand(pieces)
    union = not isinstance(region, RationalPolytope)
    if union:
        region, _ = _expand(region)
        for a, b in combinations(range(len(region)), 2):
            pt = _common_relint_point(region[a], region[b])
            if pt is not None:
                return _fail(DISJOINTNESS, pt, f"target pieces {a} and {b} overlap", side)
    n = region.ambient_dim if not union else region[0].ambient_dim
    for i, s in enumerate(pieces):
        if s.ambient_dim != n:
            return _fail(CONTAINMENT, i, f"piece {i} has dimension {s.ambient_dim}, region {n}", side)

    if not union:
        cs = region.constraints
        for i, s in enumerate(pieces):
            for v in s.vertices:
                if not cs.contains(v):
                    return _fail(CONTAINMENT, v, f"vertex of piece {i} lies outside", side)

    for a, b in combinations(range(len(pieces)), 2):
        pt = _common_relint_point(pieces[a], pieces[b])
        if pt is not None:
            return _fail(DISJOINTNESS, pt, f"pieces {a} and {b} overlap", side)

    total = sum((simplex_volume(s) for s in pieces), Fraction(0))
    expected = _region_volume(region)
    if total != expected:
        return _fail(VOLUME, None, f"piece volumes sum to {total}, region has {expected}", side)

    for k in dilations:
        got = sum(count_points(s, k) for s in pieces)
        want = sum(count_points(s, k) for s in region) if union else count_points(region, k)
        if got != want:
            return _coverage_witness(region, pieces, k, side, union)
    return replace(PASS, dilations=tuple(dilations))


def _coverage_witness(region, pieces, k, side, union):
    """First lattice point (lexicographically) covered other than exactly once."""
    systems = [constraints_of(s) for s in pieces]

    def hits(x):
        return sum(cs.contains(x, k) for cs in systems)

    if union:
        region_pts = sorted({p for s in region for p in lattice_points(s, k)})
    else:
        region_pts = lattice_points(region, k)
    inside = set(region_pts)
    candidates = sorted(set(region_pts) | {p for s in pieces for p in lattice_points(s, k)})
    for x in candidates:
        h = hits(x)
        if x not in inside and h:
            return _fail(CONTAINMENT, x, "lattice point of a piece lies outside the region", side, k)
        if x in inside and h != 1:
            return _fail(COVERAGE, x, f"lattice point covered {h} times", side, k)
    return _fail(COVERAGE, None, "piece and region counts differ", side, k)


# ---------------------------------------------------------------------------
# certificates


def verification_dilations(cert: DecompositionCertificate, images=None):
    """K = {1, ..., D'(d+1)} with D' the lcm of every denominator in sight."""
    parts = [cert.source, *cert.pieces, *(images or ())]
    parts.extend([cert.target] if isinstance(cert.target, RationalPolytope) else cert.target)
    D = lcm(*(denominator(p) for p in parts))
    d = max(cert.source.dim, _region_dim(cert.target))
    return range(1, D * (d + 1) + 1)


def _strict_maps_ok(cert):
    if len(cert.pieces) != len(cert.maps):
        return _fail(UNIMODULARITY, None, f"{len(cert.pieces)} pieces but {len(cert.maps)} maps")
    n = cert.source.ambient_dim
    for i, m in enumerate(cert.maps):
        if m.dim != n:
            return _fail(UNIMODULARITY, i, f"map {i} acts on dimension {m.dim}, expected {n}")
        if abs(m.determinant) != 1:
            return _fail(UNIMODULARITY, i, f"map {i} has determinant {m.determinant}")
        if any(t.denominator != 1 for t in m.translation):
            return _fail(UNIMODULARITY, i, f"map {i} has a non-integral translation")
    return None


def verify_certificate(cert: DecompositionCertificate) -> VerificationReport:
    if cert.mode == WEAK:
        return verify_weak(cert)
    bad = _strict_maps_ok(cert)
    if bad is not None:
        return bad
    pieces, maps = _expand(cert.pieces, cert.maps)
    images = [m.image_simplex(s) for s, m in zip(pieces, maps)]
    K = verification_dilations(cert, images)

    report = verify_partition(cert.source, pieces, K, side="source")
    if not report:
        return report
    report = verify_partition(cert.target, images, K, side="target")
    if not report:
        return report

    # independent recount of both sides
    target = cert.target
    for k in K:
        src = count_points(cert.source, k)
        if isinstance(target, RationalPolytope):
            tgt = count_points(target, k)
        else:
            tgt = sum(count_points(s, k) for s in _expand(target)[0])
        if src != tgt:
            return _fail(EHRHART_EQUALITY, k, f"source has {src} points, target {tgt}", dilation=k)
    return replace(PASS, dilations=tuple(K))


def scale_certificate(cert: DecompositionCertificate, k: int) -> DecompositionCertificate:
    target = cert.target
    if isinstance(target, RationalPolytope):
        target = dilate(target, k)
    else:
        target = tuple(s.dilate(k) for s in target)
    return DecompositionCertificate(
        source=dilate(cert.source, k),
        target=target,
        pieces=tuple(s.dilate(k) for s in cert.pieces),
        maps=tuple(m.scaled(k) for m in cert.maps),
        mode=STRICT,
    )


def verify_weak(cert: DecompositionCertificate, scale: int | None = None) -> VerificationReport:
    """Verify on the ``scale``-th dilates, where translations must be integral."""
    k = cert.scale if scale is None else scale
    if int(k) != k or k < 1:
        raise MalformedInputError(f"scale must be a positive integer, got {k}")
    for i, m in enumerate(cert.maps):
        if any((k * t).denominator != 1 for t in m.translation):
            return _fail(UNIMODULARITY, i, f"translation of map {i} is not integral after scaling by {k}")
    return verify_certificate(scale_certificate(cert, k))
