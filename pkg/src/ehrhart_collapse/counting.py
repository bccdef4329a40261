"""Exact lattice-point counting in dilates of polytopes and simplices.

Counting is brute force over the bounding box of the dilate. The box is
walked slice by slice: all but the last coordinate are enumerated
explicitly, and the admissible range of the last coordinate is solved for
exactly in integer arithmetic. Points come out in lexicographic order.
"""

from __future__ import annotations

from math import ceil, floor

import numpy as np

from .errors import MalformedInputError
from .geometry import ConstraintSystem, RationalPolytope, Simplex

_INT64_SAFE = 2**62


def constraints_of(region, interior=False) -> ConstraintSystem:
    if isinstance(region, RationalPolytope):
        return region.interior_constraints if interior else region.constraints
    if isinstance(region, Simplex):
        return region.interior().constraints if interior else region.constraints
    if isinstance(region, ConstraintSystem):
        return region
    raise TypeError(f"cannot count lattice points of {type(region).__name__}")


def bounding_box(region, k: int):
    """Integer box ``[(lo, hi), ...]`` containing every lattice point of ``k*region``."""
    _check_k(k)
    verts = region.vertices
    return [
        (floor(min(k * v[i] for v in verts)), ceil(max(k * v[i] for v in verts)))
        for i in range(len(verts[0]))
    ]


def _check_k(k):
    if int(k) != k or k < 1:
        raise MalformedInputError(f"dilation must be a positive integer, got {k}")


def _dtype_for(cs: ConstraintSystem, box, k):
    coord = max((max(abs(lo), abs(hi)) for lo, hi in box), default=0) + 1
    coeff = max((abs(x) for row in cs.eq_a + cs.ineq_a for x in row), default=0)
    rhs = max((abs(x) for x in cs.eq_b + cs.ineq_b), default=0)
    bound = coeff * coord * cs.dim + k * rhs + 1
    return np.int64 if bound < _INT64_SAFE else object


def _slices(cs: ConstraintSystem, box, k):
    """Prefix points and the inclusive last-coordinate range for each.

    Returns ``(prefix, lo, hi)`` where ``prefix`` is an ``(M, n-1)`` array in
    lexicographic order; rows with ``lo > hi`` hold no points.
    """
    n = cs.dim
    dtype = _dtype_for(cs, box, k)
    if n == 1:
        prefix = np.zeros((1, 0), dtype=dtype)
    else:
        axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in box[:-1]]
        grid = np.meshgrid(*axes, indexing="ij")
        prefix = np.stack([g.ravel() for g in grid], axis=1).astype(dtype)
    m = prefix.shape[0]
    lo = np.full(m, box[-1][0], dtype=dtype)
    hi = np.full(m, box[-1][1], dtype=dtype)
    ok = np.ones(m, dtype=bool)

    def partial(a):
        if n == 1:
            return np.zeros(m, dtype=dtype)
        return prefix @ np.array(a[:-1], dtype=dtype)

    for a, b in zip(cs.eq_a, cs.eq_b):
        r = k * b - partial(a)
        last = a[-1]
        if last == 0:
            ok &= r == 0
        else:
            q, rem = np.divmod(r, last)
            ok &= rem == 0
            lo = np.maximum(lo, q)
            hi = np.minimum(hi, q)
    for a, b, strict in zip(cs.ineq_a, cs.ineq_b, cs.strict):
        r = k * b - partial(a)
        if strict:
            r = r - 1
        last = a[-1]
        if last == 0:
            ok &= r >= 0
        elif last > 0:
            hi = np.minimum(hi, r // last)
        else:
            lo = np.maximum(lo, -(r // -last))
    hi = np.where(ok, hi, lo - 1)
    return prefix, lo, hi


def count_points(region, k: int, interior: bool = False) -> int:
    """Number of integer points in ``k * region``.

    Open simplices count only points with strictly positive barycentric
    coordinates; ``interior=True`` counts the relative interior instead.
    """
    _check_k(k)
    cs = constraints_of(region, interior)
    _, lo, hi = _slices(cs, bounding_box(region, k), k)
    return int(np.maximum(hi - lo + 1, 0).sum())


def count_interior(p, k: int) -> int:
    return count_points(p, k, interior=True)


def lattice_points(region, k: int, interior: bool = False):
    """All integer points of ``k * region`` as tuples, lexicographically."""
    _check_k(k)
    cs = constraints_of(region, interior)
    prefix, lo, hi = _slices(cs, bounding_box(region, k), k)
    out = []
    for row, a, b in zip(prefix.tolist(), lo.tolist(), hi.tolist()):
        for last in range(a, b + 1):
            out.append(tuple(row) + (last,))
    return out


def count_union(regions, k: int) -> int:
    return sum(count_points(r, k) for r in regions)
