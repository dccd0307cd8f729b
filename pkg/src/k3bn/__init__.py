"""Exact criteria for Brill-Noether restriction maps on K3 surfaces of Picard rank one."""

from .exactnum import PrecisionExhausted, RadicalExpr, Sign, precision_cap, radical_floor, radical_sign
from .lattice import (
    DegenerateInput,
    MukaiVector,
    SurfaceContext,
    UsageError,
    derived_vectors,
    mukai_pairing,
    mukai_square,
    twist,
)

__all__ = [
    "DegenerateInput",
    "MukaiVector",
    "PrecisionExhausted",
    "RadicalExpr",
    "Sign",
    "SurfaceContext",
    "UsageError",
    "derived_vectors",
    "mukai_pairing",
    "mukai_square",
    "precision_cap",
    "radical_floor",
    "radical_sign",
    "twist",
]
