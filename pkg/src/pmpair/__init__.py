"""Exact computations with plus-minus pairs of Lie algebras over Q."""

from .certificate import Certificate
from .lie import LieAlgebra, check_axioms
from .uea import NCPoly, PBWPoly, pbw_normal_form, verify_identity
from .pmfactor import span_certificate, verify_pm_pair, verify_regular_pair

__all__ = [
    "Certificate",
    "LieAlgebra",
    "NCPoly",
    "PBWPoly",
    "check_axioms",
    "pbw_normal_form",
    "span_certificate",
    "verify_identity",
    "verify_pm_pair",
    "verify_regular_pair",
]
