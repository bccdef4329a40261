"""Ehrhart quasi-polynomials, quasi-period collapse and unimodular
equidecomposability, all in exact rational arithmetic."""

from .counting import count_interior, count_points
from .ehrhart import QuasiPolynomial, ehrhart_of, minimal_quasi_period, reciprocity_check
from .equidecomp import DecompositionCertificate, verify_certificate, verify_weak
from .geometry import AffineUnimodularMap, RationalPolytope, Simplex, reduce_to_vertices

__all__ = [
    "AffineUnimodularMap",
    "DecompositionCertificate",
    "QuasiPolynomial",
    "RationalPolytope",
    "Simplex",
    "count_interior",
    "count_points",
    "ehrhart_of",
    "minimal_quasi_period",
    "reciprocity_check",
    "reduce_to_vertices",
    "verify_certificate",
    "verify_weak",
]
