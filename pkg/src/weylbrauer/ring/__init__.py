"""Exact scalars, polynomial rings, product rings, automorphisms and determinants."""

from weylbrauer.ring.automorphism import (
    AutomorphismError,
    RingAutomorphism,
    identity_automorphism,
    permutation_automorphism,
    scaling_automorphism,
)
from weylbrauer.ring.fields import (
    Field,
    PrimeField,
    PrimeFieldElement,
    QuadraticField,
    QuadraticFieldElement,
    RationalField,
    real_embedding_signs,
)
from weylbrauer.ring.matrix import (
    DetReport,
    GridTooSmallError,
    PolyMatrix,
    det_report,
    poly_det,
    rank_over_field,
)
from weylbrauer.ring.poly import MultiPoly, PolyRing, is_unit, poly_ring_fp
from weylbrauer.ring.product import ProductElement, ProductRing, component_idempotents

__all__ = [
    "AutomorphismError",
    "DetReport",
    "Field",
    "GridTooSmallError",
    "MultiPoly",
    "PolyMatrix",
    "PolyRing",
    "PrimeField",
    "PrimeFieldElement",
    "ProductElement",
    "ProductRing",
    "QuadraticField",
    "QuadraticFieldElement",
    "RationalField",
    "RingAutomorphism",
    "component_idempotents",
    "det_report",
    "identity_automorphism",
    "is_unit",
    "permutation_automorphism",
    "poly_det",
    "poly_ring_fp",
    "rank_over_field",
    "real_embedding_signs",
    "scaling_automorphism",
]
