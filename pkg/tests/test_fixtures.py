from fractions import Fraction as F

import pytest

from ehrhart_collapse import fixtures
from ehrhart_collapse.counting import lattice_points
from ehrhart_collapse.errors import MalformedInputError
from ehrhart_collapse.geometry import (
    RationalPolytope,
    Simplex,
    denominator,
    is_unimodular,
    simplex_volume,
)
from ehrhart_collapse.reflexive import is_reflexive

import oracles


@pytest.mark.parametrize("D", range(2, 9))
def test_mw_triangle_denominator(D):
    T = fixtures.mw_triangle(D)
    assert denominator(T) == D
    assert T.volume == oracles.shoelace_area([(0, 0), (1, F(D - 1, D)), (D, 0)])
    assert T.volume == fixtures.mw_target(D).volume


@pytest.mark.parametrize("D", range(2, 9))
def test_mw_map(D):
    U = fixtures.mw_map(D)
    assert is_unimodular(U)
    top = (1, F(D - 1, D))
    # the left triangle conv{(0,0), (1,0), top} goes onto conv{(1,1), (D,0), top}
    assert U((0, 0)) == (1, 1)
    assert U((1, 0)) == (D, 0)
    assert U(top) == top


def test_bad_parameter():
    for bad in (1, 0, -3):
        with pytest.raises(MalformedInputError):
            fixtures.mw_triangle(bad)


def test_quadrilateral_boundary_lattice_points():
    Q = fixtures.quadrilateral_q(3)
    assert set(lattice_points(Q, 1)) - set(lattice_points(Q, 1, interior=True)) == {(0, 0), (3, 0)}
    assert denominator(Q) == 3
    assert Q.volume == 2 * fixtures.mw_triangle(3).volume


def test_stanley_fixtures():
    P = fixtures.stanley_pyramid()
    assert denominator(P) == 2 and P.dim == 3
    T = fixtures.stanley_target()
    assert denominator(T) == 1
    assert P.volume == T.volume == F(1, 6)
    M = fixtures.STANLEY_MATRIX
    # the matrix fixes the cutting plane pointwise
    w = fixtures.STANLEY_NORMAL
    for x in [(1, 1, 0), (1, 0, 1), (0, 1, -1)]:
        assert sum(a * b for a, b in zip(w, x)) == 0
        assert tuple(sum(M[i][j] * x[j] for j in range(3)) for i in range(3)) == x


@pytest.mark.parametrize("name", sorted(fixtures.POLYTOPES))
def test_polytope_registry(name):
    P = fixtures.POLYTOPES[name](*((4,) if name in fixtures.PARAMETRIZED else ()))
    assert isinstance(P, RationalPolytope)
    assert P.dim == P.ambient_dim


@pytest.mark.parametrize("name", sorted(fixtures.CERTIFICATES))
def test_certificate_pieces_are_well_formed(name):
    cert = fixtures.CERTIFICATES[name](*((3,) if name in fixtures.PARAMETRIZED else ()))
    assert len(cert.pieces) == len(cert.maps)
    for s in cert.pieces:
        assert isinstance(s, Simplex)
        assert s.ambient_dim == cert.source.ambient_dim
    full = [s for s in cert.pieces if s.dim == cert.source.dim]
    assert sum(simplex_volume(s) for s in full) == cert.source.volume


def test_reflexive_samples():
    samples = fixtures.reflexive_samples()
    assert len(set(samples)) >= 5
    for P in samples:
        assert P.convex and is_reflexive(P)
        assert oracles.brute_count(P.as_polytope(), 1, interior=True) == 1
        assert lattice_points(P.as_polytope(), 1, interior=True) == [(0, 0)]
