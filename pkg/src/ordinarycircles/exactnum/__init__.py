"""Certified real arithmetic: dyadic intervals, exact angles, cyclotomic and
quadratic field elements, and lazily-refinable real expressions."""
from .angle import Angle, ZERO_ANGLE
from .cyclotomic import CycloElement, CycloField, cyclotomic_polynomial
from .dyadic import DyadicInterval, cos_turn_interval, sin_turn_interval
from .expr import (
    EXACT_RATIONAL,
    INTERVAL_AT,
    SYMBOLIC_ZERO,
    RealExpr,
    SignCertificate,
    certified_sign,
    eval_interval,
    exact_rational_value,
    exactify,
    expr_from_json,
    expr_to_json,
    precision_cap,
    scalar_add,
    scalar_as_fraction,
    scalar_div,
    scalar_is_zero,
    scalar_mul,
    scalar_neg,
    scalar_sign,
)
from .quadratic import QuadraticElement

__all__ = [
    "Angle",
    "ZERO_ANGLE",
    "CycloElement",
    "CycloField",
    "cyclotomic_polynomial",
    "DyadicInterval",
    "cos_turn_interval",
    "sin_turn_interval",
    "RealExpr",
    "SignCertificate",
    "certified_sign",
    "eval_interval",
    "exact_rational_value",
    "exactify",
    "expr_from_json",
    "expr_to_json",
    "precision_cap",
    "QuadraticElement",
    "EXACT_RATIONAL",
    "INTERVAL_AT",
    "SYMBOLIC_ZERO",
    "scalar_add",
    "scalar_as_fraction",
    "scalar_div",
    "scalar_is_zero",
    "scalar_mul",
    "scalar_neg",
    "scalar_sign",
]
