"""Exact Alexander polynomial, rho1 and theta invariants of upright long-knot diagrams."""

__version__ = "0.1.0"

from .diagram import Chirality, Crossing, UprightDiagram, kink_insert, parse, serialize, validate
from .invariants import (
    InvariantResult,
    alexander,
    build_matrix,
    compute_all,
    green,
    rho1,
    specialize_theta,
    theta,
)
from .poly import LaurentPoly1, LaurentPoly2, RationalFunc1, RationalFunc2, exact_divide

__all__ = [
    "Chirality",
    "Crossing",
    "UprightDiagram",
    "kink_insert",
    "parse",
    "serialize",
    "validate",
    "InvariantResult",
    "alexander",
    "build_matrix",
    "compute_all",
    "green",
    "rho1",
    "specialize_theta",
    "theta",
    "LaurentPoly1",
    "LaurentPoly2",
    "RationalFunc1",
    "RationalFunc2",
    "exact_divide",
]
