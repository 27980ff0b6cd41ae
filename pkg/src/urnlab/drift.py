"""Drift polynomial of a rule and the number the rule computes."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .algebraic import DEFAULT_WIDTH, AlgebraicNumber, isolate_roots
from .poly import RationalPolynomial
from .rule import Rule

__all__ = [
    "ZeroPolynomialError",
    "drift_polynomial",
    "drift_direct",
    "roots_in_unit_interval",
    "adjacent_root",
    "computed_number",
]

HALF = Fraction(1, 2)


class ZeroPolynomialError(ValueError):
    """The polynomial vanishes identically, so its roots are not isolated."""


def drift_polynomial(r: Rule) -> RationalPolynomial:
    """``b(y) = sum_{i in E} k C(k,i) y^i (1-y)^(k-i) - k y`` in the monomial basis.

    ``b(y)`` is the expected one-step change of the black count when the
    ``k`` drawn balls are i.i.d. Bernoulli(y). Coefficients are integers.
    """
    k = r.k
    coeffs = [0] * (k + 1)
    for i in r.E:
        outer = k * comb(k, i)
        for j in range(k - i + 1):
            coeffs[i + j] += outer * comb(k - i, j) * (-1) ** j
    coeffs[1] -= k
    return RationalPolynomial(coeffs)


def drift_direct(r: Rule, y) -> Fraction:
    """Term-by-term value of ``b(y)`` without expanding; used as a cross-check."""
    y = Fraction(y)
    k = r.k
    return sum((k * comb(k, i) * y**i * (1 - y) ** (k - i) for i in r.E), Fraction(0)) - k * y


def roots_in_unit_interval(p: RationalPolynomial, width: Fraction = DEFAULT_WIDTH) -> list[AlgebraicNumber]:
    """Distinct real roots of ``p`` in ``[0, 1]``, ascending, with certified intervals."""
    if p.is_zero():
        raise ZeroPolynomialError("drift polynomial is identically zero")
    return isolate_roots(p, 0, 1, width=width, checkpoints=(HALF,))


def adjacent_root(p: RationalPolynomial, x0=HALF) -> AlgebraicNumber:
    """Root that the flow ``x' = p(x)`` started at ``x0`` converges to.

    If ``p(x0) >= 0`` this is the smallest root ``>= x0``, otherwise the
    largest root ``<= x0``. When ``p`` vanishes identically the solution is
    constant and the answer is ``x0`` itself.
    """
    x0 = Fraction(x0)
    if p.is_zero():
        return AlgebraicNumber.from_rational(x0)
    roots = isolate_roots(p, 0, 1, checkpoints=(x0, HALF))
    if p(x0) >= 0:
        ahead = [a for a in roots if a.compare(x0) >= 0]
        if ahead:
            return ahead[0]
    else:
        behind = [a for a in roots if a.compare(x0) <= 0]
        if behind:
            return behind[-1]
    raise ValueError(f"no root of {p} reachable from x0={x0} inside [0, 1]")


def computed_number(r: Rule) -> AlgebraicNumber:
    """The number ``alpha`` computed by the rule, i.e. the limit of the ODE from 1/2."""
    return adjacent_root(drift_polynomial(r), HALF)
