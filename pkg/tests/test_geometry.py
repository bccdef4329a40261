import random
from fractions import Fraction as F
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrhart_collapse import linalg, lp
from ehrhart_collapse.counting import lattice_points
from ehrhart_collapse.errors import MalformedInputError, UnsupportedDimensionError
from ehrhart_collapse.fixtures import mw_map, mw_triangle, stanley_pyramid, unit_square
from ehrhart_collapse.geometry import (
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    AffineUnimodularMap,
    RationalPolytope,
    Simplex,
    apply_map,
    barycentric_coordinates,
    compose,
    denominator,
    dilate,
    half_open_decompose,
    invert,
    is_unimodular,
    membership_classify,
    reduce_to_vertices,
    simplex_volume,
    triangulate,
)

import oracles

U3 = AffineUnimodularMap(((2, -3), (-1, 1)), (1, 1))
ID2 = AffineUnimodularMap.identity(2)


# --- linear algebra and LP -------------------------------------------------


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(rows):
    assert linalg.det(rows) == sympy.Matrix(rows).det()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_is_kernel(rows):
    basis = linalg.nullspace(rows, 4)
    assert len(basis) == 4 - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(linalg.dot(r, v) == 0 for r in rows)


def test_lp_small_problem():
    # max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    res = lp.maximize([1, 1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == lp.OPTIMAL
    assert res.value == F(14, 5)
    assert res.x[:2] == (F(8, 5), F(6, 5))


def test_lp_infeasible_and_unbounded():
    assert lp.maximize([1], [[1]], [-1]).status == lp.INFEASIBLE
    assert lp.maximize([1, 0], [[1, -1]], [0]).status == lp.UNBOUNDED


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=2, max_size=2),
    st.lists(st.integers(0, 5), min_size=2, max_size=2),
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
)
def test_lp_against_vertex_enumeration(A, b, c):
    # bounded by adding x1+..+x4 + s = 6; oracle enumerates all basic solutions
    A = [row + [0] for row in A] + [[1, 1, 1, 1, 1]]
    b = b + [6]
    c = c + [0]
    res = lp.maximize(c, A, b)
    best = None
    for cols in combinations(range(5), 3):
        sub = [[A[i][j] for j in cols] for i in range(3)]
        x = linalg.solve(sub, b)
        if x is None or any(v < 0 for v in x):
            continue
        val = sum(c[j] * v for j, v in zip(cols, x))
        best = val if best is None else max(best, val)
    if best is None:
        # could still be feasible through a degenerate, rank-deficient system
        assert res.status in (lp.INFEASIBLE, lp.OPTIMAL)
    else:
        assert res.status == lp.OPTIMAL and res.value == best


# --- affine maps ------------------------------------------------------------


def test_is_unimodular_examples():
    assert is_unimodular(U3)
    assert is_unimodular(ID2)
    assert not is_unimodular(AffineUnimodularMap(((2, 0), (0, 1)), (0, 0)))


def test_non_square_matrix_is_malformed():
    with pytest.raises(MalformedInputError):
        AffineUnimodularMap(((1, 0, 0), (0, 1, 0)), (0, 0))


def test_strict_map_with_rational_translation_is_not_unimodular():
    assert not is_unimodular(AffineUnimodularMap(((1,),), (F(1, 2),)))
    assert is_unimodular(AffineUnimodularMap(((1,),), (F(1, 2),), "weak"))


def test_apply_map_examples():
    assert apply_map(U3, (0, 0)) == (1, 1)
    assert apply_map(U3, (1, 0)) == (3, 0)
    assert apply_map(ID2, (F(2, 7), -5)) == (F(2, 7), -5)
    assert U3 == mw_map(3)
    with pytest.raises(MalformedInputError):
        apply_map(U3, (1, 2, 3))


def test_inverse_and_composition():
    inv = invert(U3)
    assert inv.matrix == ((-1, -3), (-1, -2))
    assert compose(U3, inv) == ID2
    assert compose(inv, U3) == ID2
    t1 = AffineUnimodularMap.translate((1, 2))
    t2 = AffineUnimodularMap.translate((-3, 5))
    assert compose(t1, t2) == AffineUnimodularMap.translate((-2, 7))
    with pytest.raises(MalformedInputError):
        invert(AffineUnimodularMap(((2, 0), (0, 1)), (0, 0)))


@st.composite
def unimodular_maps(draw, n=2):
    seed = draw(st.integers(0, 10**6))
    return oracles.random_unimodular_map(random.Random(seed), n)


points2 = st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                    st.fractions(min_value=-5, max_value=5, max_denominator=7))


@given(unimodular_maps(), points2)
def test_inverse_roundtrip(m, x):
    assert is_unimodular(m)
    assert apply_map(invert(m), apply_map(m, x)) == x
    assert is_unimodular(invert(m))


@given(unimodular_maps())
def test_denominator_is_unimodular_invariant(m):
    T = mw_triangle(5)
    assert denominator(oracles.image(m, T)) == denominator(T) == 5


@settings(deadline=None, max_examples=30)
@given(unimodular_maps())
def test_volume_is_unimodular_invariant(m):
    for P in (mw_triangle(3), unit_square()):
        Q = oracles.image(m, P)
        assert Q.volume == P.volume


# --- polytopes --------------------------------------------------------------


def test_reduce_to_vertices_examples():
    assert reduce_to_vertices([(0, 0), (1, 0), (F(1, 2), 0)]).vertices == ((0, 0), (1, 0))
    tri = [(0, 0), (1, F(2, 3)), (3, 0)]
    assert reduce_to_vertices(tri).vertices == tuple(tuple(map(F, p)) for p in tri)
    assert reduce_to_vertices([(F(1, 3), 2)]).vertices == ((F(1, 3), 2),)
    with pytest.raises(MalformedInputError):
        reduce_to_vertices([])


def test_reduce_drops_interior_and_duplicate_points():
    P = reduce_to_vertices([(0, 0), (2, 0), (1, 1), (0, 2), (2, 2), (2, 2), (1, 0)])
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2), (2, 2)}


def test_denominator_examples():
    assert denominator(mw_triangle(3)) == 3
    assert denominator(unit_square()) == 1
    assert denominator(reduce_to_vertices([(0,), (F(5, 6),)])) == 6


def test_dilate_examples():
    assert set(dilate(unit_square(), 2).vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert dilate(mw_triangle(3), 1) == mw_triangle(3)
    seg = dilate(reduce_to_vertices([(0,), (F(1, 2),)]), 2)
    assert seg.vertices == ((0,), (1,)) and denominator(seg) == 1
    with pytest.raises(MalformedInputError):
        dilate(unit_square(), 0)


def test_barycentric_examples():
    tri = Simplex(((0, 0), (1, 0), (0, 1)))
    c = (F(1, 3), F(1, 3))
    assert barycentric_coordinates(tri, c) == (F(1, 3),) * 3
    assert barycentric_coordinates(tri, (0, 0)) == (1, 0, 0)
    seg = Simplex(((0, 0), (1, 0)))
    assert barycentric_coordinates(seg, (F(1, 2), 1)) is None
    assert barycentric_coordinates(seg, (3, 0)) == (-2, 3)


def test_membership_examples():
    T = mw_triangle(3)
    assert membership_classify(T, (1, 0)) == BOUNDARY
    assert membership_classify(T, (1, F(1, 3))) == INTERIOR
    assert membership_classify(T, (5, 5)) == OUTSIDE


def test_membership_relative_to_affine_hull():
    seg = reduce_to_vertices([(0, 0), (2, 2)])
    assert membership_classify(seg, (1, 1)) == INTERIOR
    assert membership_classify(seg, (0, 0)) == BOUNDARY
    assert membership_classify(seg, (1, 0)) == OUTSIDE
    pt = reduce_to_vertices([(1, 1)])
    assert membership_classify(pt, (1, 1)) == INTERIOR


@pytest.mark.parametrize("P", [mw_triangle(3), unit_square(), stanley_pyramid(),
                               reduce_to_vertices([(0, 0), (3, 3)])], ids=str)
def test_lp_membership_agrees_with_constraints(P):
    # the fast integer constraint system against the LP classifier
    for k in (1, 2, 3):
        for x in product(*oracles.box(P.vertices, k)):
            y = tuple(F(c, k) for c in x)
            cls = membership_classify(P, y)
            assert P.constraints.contains(x, k) == (cls != OUTSIDE)
            assert P.interior_constraints.contains(x, k) == (cls == INTERIOR)


def test_triangulate_examples():
    tri = mw_triangle(3)
    assert triangulate(tri) == [Simplex(tri.vertices)]
    sq = triangulate(unit_square())
    assert sq == [Simplex(((0, 0), (1, 0), (1, 1))), Simplex(((0, 0), (1, 1), (0, 1)))]
    pyr = triangulate(stanley_pyramid())
    assert len(pyr) == 2
    assert sum(simplex_volume(s) for s in pyr) == F(1, 6)


def test_triangulation_uses_only_vertices_and_has_disjoint_interiors():
    from ehrhart_collapse.equidecomp import open_disjoint

    P = reduce_to_vertices([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (0, 0, 2), (2, 0, 2), (0, 2, 2), (2, 2, 2)])
    cells = triangulate(P)
    assert sum(simplex_volume(s) for s in cells) == 8
    for s in cells:
        assert set(s.vertices) <= set(P.vertices)
    for a in range(len(cells)):
        for b in range(a + 1, len(cells)):
            assert open_disjoint(cells[a].interior(), cells[b].interior())


def test_triangulate_rejects_dimension_four():
    P = reduce_to_vertices([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    with pytest.raises(UnsupportedDimensionError):
        triangulate(P)


def test_simplex_volume_examples():
    assert simplex_volume(Simplex(((0, 0), (1, 0), (0, 1)))) == F(1, 2)
    assert simplex_volume(Simplex(mw_triangle(3).vertices)) == 1
    assert simplex_volume(Simplex(((0, 0), (1, 1)))) == 0


def test_simplex_rejects_dependent_vertices():
    with pytest.raises(MalformedInputError):
        Simplex(((0, 0), (1, 1), (2, 2)))


# --- half-open decomposition ------------------------------------------------

TOP = (1, F(2, 3))
L3 = Simplex(((0, 0), (1, 0), TOP))


def test_half_open_full_face_lattice():
    pieces = half_open_decompose(Simplex(((0, 0), (1, 0), (0, 1))))
    assert len(pieces) == 7
    assert sorted(p.dim for p in pieces) == [0, 0, 0, 1, 1, 1, 2]
    assert all(p.open for p in pieces)


def test_half_open_left_triangle():
    pieces = half_open_decompose(L3, [[(1, 0), TOP]])
    got = {frozenset(p.vertices) for p in pieces}
    want = {
        frozenset({(0, 0), (1, 0), TOP}),
        frozenset({(0, 0), (1, 0)}),
        frozenset({(0, 0), TOP}),
        frozenset({(0, 0)}),
    }
    assert got == want


def test_half_open_segment():
    pieces = half_open_decompose(Simplex(((0,), (1,))), [[(1,)]])
    assert [p.vertices for p in pieces] == [((0,), (1,)), ((0,),)]


def test_half_open_rejects_non_facet():
    with pytest.raises(MalformedInputError):
        half_open_decompose(L3, [[(0, 0)]])
    with pytest.raises(MalformedInputError):
        half_open_decompose(L3, [[(0, 0), (5, 5)]])


@pytest.mark.parametrize("excluded", [[], [[(1, 0), TOP]], [[(1, 0), TOP], [(0, 0), (1, 0)]]])
def test_half_open_pieces_partition_lattice_points(excluded):
    pieces = half_open_decompose(L3, excluded)
    facets = [Simplex(tuple(f)) for f in excluded]
    for k in range(1, 7):
        expected = set(oracles.brute_points(L3, k))
        for f in facets:
            expected -= set(oracles.brute_points(f, k))
        seen = []
        for p in pieces:
            seen.extend(lattice_points(p, k))
        assert len(seen) == len(set(seen))
        assert set(seen) == expected


def test_barycentric_agrees_with_membership_on_dilates():
    S = Simplex(((0, 0), (1, F(1, 2)), (F(5, 2), 0)))
    P = RationalPolytope(S.vertices)
    for k in range(1, 7):
        for x in product(*oracles.box(S.vertices, k)):
            y = tuple(F(c, k) for c in x)
            lam = barycentric_coordinates(S, y)
            cls = membership_classify(P, y)
            if all(c > 0 for c in lam):
                assert cls == INTERIOR
            elif all(c >= 0 for c in lam):
                assert cls == BOUNDARY
            else:
                assert cls == OUTSIDE
