"""Exact polynomial arithmetic, Groebner bases and the weak Nullstellensatz test."""

from .field import GF, QQ, Field, is_prime, random_prime
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    BudgetExceeded,
    GroebnerStats,
    buchberger,
    ideal_contains_one,
    is_groebner,
    normal_form,
    s_polynomial,
)
from .io import format_poly, format_system, parse_poly, parse_system
from .poly import (
    PARAMETER,
    UNKNOWN,
    FieldMismatch,
    MonomialOrder,
    Polynomial,
    PolySystem,
    Registry,
    monomial_cmp,
    poly_add,
    poly_mul,
    poly_neg,
    specialize,
)

__all__ = [
    "GF", "QQ", "Field", "is_prime", "random_prime",
    "DEFAULT_PAIR_BUDGET", "BudgetExceeded", "GroebnerStats", "buchberger",
    "ideal_contains_one", "is_groebner", "normal_form", "s_polynomial",
    "format_poly", "format_system", "parse_poly", "parse_system",
    "PARAMETER", "UNKNOWN", "FieldMismatch", "MonomialOrder", "Polynomial",
    "PolySystem", "Registry", "monomial_cmp", "poly_add", "poly_mul", "poly_neg",
    "specialize",
]
