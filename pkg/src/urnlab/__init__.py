"""urnlab: two-color urn population protocols.

Draw ``k`` balls from an urn of ``n``; if the number of black balls drawn lies
in ``E`` recolor all ``k`` black, otherwise white. This package computes the
exact drift polynomial of a rule ``(k, E)``, the algebraic number the rule
converges to, finite-``n`` stationary laws, seeded simulations, ODE limits and
rule synthesis for rational targets.
"""

__version__ = "0.1.0"

from .rule import Rule, RuleError, dual, new_rule, parse_rule
from .poly import RationalPolynomial, evaluate
from .algebraic import AlgebraicNumber
from .drift import (
    ZeroPolynomialError,
    adjacent_root,
    computed_number,
    drift_polynomial,
    roots_in_unit_interval,
)

__all__ = [
    "AlgebraicNumber",
    "RationalPolynomial",
    "Rule",
    "RuleError",
    "ZeroPolynomialError",
    "adjacent_root",
    "computed_number",
    "drift_polynomial",
    "dual",
    "evaluate",
    "new_rule",
    "parse_rule",
    "roots_in_unit_interval",
]
