"""Dense polynomials with exact rational coefficients.

Coefficients are stored low degree first, so ``[2, -2, -2]`` is
``2 - 2y - 2y**2``. Trailing zeros are stripped; the zero polynomial has
no coefficients at all.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

__all__ = ["RationalPolynomial", "evaluate", "poly_gcd"]

Number = Union[int, Fraction]


def _normalize(coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class RationalPolynomial:
    __slots__ = ("coefficients", "_ints")

    def __init__(self, coefficients: Iterable[Number] = ()) -> None:
        object.__setattr__(self, "coefficients", _normalize(coefficients))
        object.__setattr__(self, "_ints", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    def __reduce__(self):
        return (RationalPolynomial, (self.coefficients,))

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "RationalPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Sequence[Number], lead: Number = 1) -> "RationalPolynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def lead(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, y: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * y + c
        return acc

    def sign_at(self, y: Number) -> int:
        """Sign of ``p(y)`` computed in integer arithmetic."""
        ints = self.integer_coefficients()
        y = Fraction(y)
        num, den = y.numerator, y.denominator
        acc, dpow = 0, 1
        for c in reversed(ints):
            acc = acc * num + c * dpow
            dpow *= den
        return (acc > 0) - (acc < 0)

    def float_coefficients(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: "RationalPolynomial | Number") -> "RationalPolynomial":
        other = _coerce(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return RationalPolynomial(
            [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)]
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "RationalPolynomial | Number") -> "RationalPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: Number) -> "RationalPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "RationalPolynomial | Number") -> "RationalPolynomial":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RationalPolynomial":
        out = RationalPolynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "RationalPolynomial") -> tuple["RationalPolynomial", "RationalPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv_lead = 1 / other.lead
        for shift in range(len(rem) - 1 - dq, -1, -1):
            c = rem[shift + dq] * inv_lead
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coefficients):
                    rem[shift + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    # calculus and transforms ---------------------------------------------

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        acc = RationalPolynomial()
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def reflect(self) -> "RationalPolynomial":
        """``y -> p(1 - y)``."""
        return self.compose(RationalPolynomial([1, -1]))

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def integer_coefficients(self) -> tuple[int, ...]:
        """Coprime integer coefficients, a positive multiple of ``self``."""
        if self._ints is None:
            den = reduce(lcm, (c.denominator for c in self.coefficients), 1)
            ints = [int(c * den) for c in self.coefficients]
            g = reduce(gcd, ints, 0) or 1
            object.__setattr__(self, "_ints", tuple(c // g for c in ints))
        return self._ints

    def primitive(self) -> tuple[int, ...]:
        """Integer coefficients with gcd 1 and positive leading term, same roots."""
        ints = self.integer_coefficients()
        if ints and ints[-1] < 0:
            return tuple(-c for c in ints)
        return ints

    def square_free(self) -> "RationalPolynomial":
        """Monic product of the distinct irreducible factors."""
        if self.degree < 1:
            return self.monic()
        return (self // poly_gcd(self, self.derivative())).monic()

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[-1]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in reversed(terms[:-1]):
            out += f" {sign} {body}"
        return out


def _coerce(x: "RationalPolynomial | Number") -> RationalPolynomial:
    return x if isinstance(x, RationalPolynomial) else RationalPolynomial([x])


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over the rationals (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def evaluate(p: RationalPolynomial, y: Number) -> Fraction:
    """Exact Horner evaluation of ``p`` at rational ``y``."""
    return p(Fraction(y))
