import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ehrhart_collapse.counting import count_points
from ehrhart_collapse.ehrhart import ehrhart_of
from ehrhart_collapse.equidecomp import (
    COVERAGE,
    UNIMODULARITY,
    DecompositionCertificate,
    open_disjoint,
    scale_certificate,
    verification_dilations,
    verify_certificate,
    verify_partition,
    verify_weak,
)
from ehrhart_collapse.fixtures import (
    _mw_parts,
    mw_certificate,
    mw_triangle,
    quadrilateral_certificate,
    segment,
    segment_pair_certificate,
    stanley_certificate,
    unit_square,
)
from ehrhart_collapse.geometry import STRICT, WEAK, AffineUnimodularMap, Simplex, compose

import oracles


def test_open_disjoint_examples():
    a = Simplex(((0, 0), (1, 0), (0, 1)), True)
    b = Simplex(((1, 1), (1, 0), (0, 1)), True)
    diag = Simplex(((1, 0), (0, 1)), True)
    assert open_disjoint(a, b)
    assert open_disjoint(a, diag)
    assert not open_disjoint(a, a)
    assert not open_disjoint(a, Simplex(((0, 0), (1, 1)), True))
    # a vertex inside the closure of an edge but not its relative interior
    assert open_disjoint(Simplex(((1, 0),), True), diag)
    assert not open_disjoint(Simplex(((F(1, 2), F(1, 2)),), True), diag)


def test_partition_of_mw_triangle():
    left, right = _mw_parts(3)
    assert len(left) == 4 and len(right) == 7
    assert verify_partition(mw_triangle(3), left + right, range(1, 10))


def test_open_triangle_alone_misses_the_boundary():
    T = mw_triangle(3)
    rep = verify_partition(T, [Simplex(T.vertices, True)], [1])
    assert not rep
    # volume agrees, so the failure is caught by the lattice count
    assert rep.failed_check == COVERAGE
    assert rep.witness == (0, 0) and rep.dilation == 1


def test_two_open_triangles_do_not_cover_the_square():
    pieces = [Simplex(((0, 0), (1, 0), (1, 1)), True), Simplex(((0, 0), (0, 1), (1, 1)), True)]
    rep = verify_partition(unit_square(), pieces, [1, 2])
    assert not rep and rep.failed_check == COVERAGE
    assert rep.witness == (0, 0)


def test_overlap_is_reported():
    pieces = [Simplex(((0, 0), (1, 0), (1, 1))), Simplex(((0, 0), (0, 1), (1, 1))), Simplex(((0, 0), (1, 1)), True)]
    rep = verify_partition(unit_square(), pieces, [1])
    assert rep.failed_check == "disjointness"


FIXED = {
    "mw2": lambda: mw_certificate(2),
    "mw3": lambda: mw_certificate(3),
    "mw5": lambda: mw_certificate(5),
    "quad3": lambda: quadrilateral_certificate(3),
    "stanley": stanley_certificate,
}


@pytest.mark.parametrize("name", FIXED)
def test_fixture_certificates_pass(name):
    cert = FIXED[name]()
    rep = verify_certificate(cert)
    assert rep.passed, rep
    # weak verification at scale 1 is the strict check
    assert verify_weak(cert, 1).passed


@pytest.mark.parametrize("name", FIXED)
def test_passing_certificate_is_sound(name):
    """Independent recount: the two sides agree on K and beyond it."""
    cert = FIXED[name]()
    K = verification_dilations(cert)
    target = cert.target
    for k in range(1, 2 * max(K) + 1 if cert.source.dim < 3 else max(K) + 3):
        src = count_points(cert.source, k)
        if isinstance(target, tuple):
            tgt = sum(count_points(s, k) for s in target for s in ([s] if s.open else s.faces()))
        else:
            tgt = count_points(target, k)
        assert src == tgt
    if not isinstance(target, tuple):
        assert ehrhart_of(cert.source) == ehrhart_of(target)


def test_non_unimodular_map_rejected():
    cert = mw_certificate(3)
    bad = cert.with_map(0, AffineUnimodularMap(((2, 0), (0, 1)), (1, 1)))
    rep = verify_certificate(bad)
    assert rep.failed_check == UNIMODULARITY and rep.witness == 0


def test_fractional_translation_rejected_in_strict_mode():
    cert = mw_certificate(3)
    m = cert.maps[0]
    bad = cert.with_map(0, AffineUnimodularMap(m.matrix, (1, F(1, 2))))
    assert verify_certificate(bad).failed_check == UNIMODULARITY


def test_length_mismatch_is_a_unimodularity_failure():
    cert = mw_certificate(3)
    bad = DecompositionCertificate(cert.source, cert.target, cert.pieces, cert.maps[:-1])
    assert verify_certificate(bad).failed_check == UNIMODULARITY


def _perturbed(cert, v, indices):
    for i in indices:
        m = cert.maps[i]
        cert = cert.with_map(i, AffineUnimodularMap(m.matrix, tuple(t + c for t, c in zip(m.translation, v))))
    return cert


@pytest.mark.parametrize("D", [2, 3, 4])
def test_translation_perturbations_fail_with_witness(D):
    cert = mw_certificate(D)
    moved = [i for i, m in enumerate(cert.maps) if m != AffineUnimodularMap.identity(2)]
    for v in itertools.product(range(-2, 3), repeat=2):
        if v == (0, 0):
            continue
        for idx in ([moved[0]], moved):
            rep = verify_certificate(_perturbed(cert, v, idx))
            assert not rep
            assert rep.witness is not None or rep.failed_check == "volume"


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["mw3", "stanley"]), st.data())
def test_random_perturbation_fails(name, data):
    cert = FIXED[name]()
    n = cert.source.ambient_dim
    v = data.draw(st.tuples(*[st.integers(-3, 3)] * n).filter(any))
    i = data.draw(st.integers(0, len(cert.maps) - 1))
    rep = verify_certificate(_perturbed(cert, v, [i]))
    assert not rep


def test_weak_certificate():
    cert = segment_pair_certificate()
    assert cert.mode == WEAK
    assert verify_certificate(cert).passed
    assert verify_weak(cert, 4).passed
    rep = verify_weak(cert, 1)
    assert rep.failed_check == UNIMODULARITY
    rep = verify_weak(cert, 3)
    assert rep.failed_check == UNIMODULARITY


def test_weak_certificate_with_wrong_target_fails():
    cert = segment_pair_certificate()
    bad = DecompositionCertificate(cert.source, segment(F(1, 3), F(5, 6)), cert.pieces, cert.maps, WEAK, 2)
    assert not verify_certificate(bad)


def test_scaling_dilates_everything():
    cert = scale_certificate(segment_pair_certificate(), 2)
    assert cert.mode == STRICT
    assert cert.source.vertices == ((0,), (1,))
    assert cert.maps[0].translation == (1,)


def test_unimodular_image_certificate():
    """Transport a passing certificate by a random unimodular map of the target."""
    rng = random.Random(3)
    cert = mw_certificate(3)
    for _ in range(3):
        g = oracles.random_unimodular_map(rng, 2)
        moved = DecompositionCertificate(
            cert.source, oracles.image(g, cert.target), cert.pieces, tuple(compose(g, m) for m in cert.maps)
        )
        assert verify_certificate(moved).passed
