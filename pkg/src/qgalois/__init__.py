"""Exact cyclotomic algebra for the quantum groups A(n,m,lambda), their Galois
objects X(n,m,lambda,mu), the reflected quantum group C and the dual data."""

from __future__ import annotations

from .errors import ConfigurationError, ConstructionError, ParseError, VerificationError
from .galois import GaloisObject, verify_identity_suite, verify_properties
from .hopf import HopfStructure, verify_hopf_axioms
from .literals import format_value, parse_element, parse_scalar, parse_tensor
from .qalgebra import (
    Element, Presentation, Tensor, Window, galois_presentation, gaussian_binomial,
    quantum_group_presentation, reflected_presentation,
)
from .reflection import Reflection, construct_C, verify_bi_galois, verify_reflection
from .report import Report
from .scalar import CyclotomicField, CyclotomicScalar

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "ConstructionError", "ParseError", "VerificationError",
    "GaloisObject", "verify_identity_suite", "verify_properties",
    "HopfStructure", "verify_hopf_axioms",
    "format_value", "parse_element", "parse_scalar", "parse_tensor",
    "Element", "Presentation", "Tensor", "Window", "galois_presentation",
    "gaussian_binomial", "quantum_group_presentation", "reflected_presentation",
    "Reflection", "construct_C", "verify_bi_galois", "verify_reflection",
    "Report", "CyclotomicField", "CyclotomicScalar",
]
