"""Cyclic diagonal automorphisms of smooth plane curves, computed exactly."""

from .classify import classify, compare_to_reference, subsumption_edges
from .expr import parse_polynomial, print_polynomial
from .poly import Family, Monomial, Poly, monomials_of_degree, specialize
from .torus import DiagonalAut, TypeTriple, canonical_type, diagonal_stabilizer, invariant_class

__all__ = [
    "DiagonalAut",
    "Family",
    "Monomial",
    "Poly",
    "TypeTriple",
    "canonical_type",
    "classify",
    "compare_to_reference",
    "diagonal_stabilizer",
    "invariant_class",
    "monomials_of_degree",
    "parse_polynomial",
    "print_polynomial",
    "specialize",
    "subsumption_edges",
]
