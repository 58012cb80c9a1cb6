"""Exact rational polynomial algebra: Groebner bases and elimination."""

from .elimination import (
    SubalgebraMembership,
    eliminate,
    radical_membership,
    relation_ideal,
    saturate,
    subalgebra_membership,
)
from .groebner import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    Ideal,
    Reducer,
    groebner_basis,
    is_groebner_basis,
    normal_form,
    s_polynomial,
)
from .kernels import IMPLEMENTATION
from .orders import GREVLEX, LEX, MonomialOrder, block_order
from .poly import Polynomial, PolynomialSyntaxError, Ring, RingMismatchError, parse_polynomial
from .serialize import PolynomialFormatError, polynomial_from_json, polynomial_to_json

RationalPolynomial = Polynomial

__all__ = [
    "Budget",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "GREVLEX",
    "IMPLEMENTATION",
    "Ideal",
    "LEX",
    "MonomialOrder",
    "Polynomial",
    "PolynomialFormatError",
    "PolynomialSyntaxError",
    "RationalPolynomial",
    "Reducer",
    "Ring",
    "RingMismatchError",
    "SubalgebraMembership",
    "block_order",
    "eliminate",
    "groebner_basis",
    "is_groebner_basis",
    "normal_form",
    "parse_polynomial",
    "polynomial_from_json",
    "polynomial_to_json",
    "radical_membership",
    "relation_ideal",
    "s_polynomial",
    "saturate",
    "subalgebra_membership",
]
