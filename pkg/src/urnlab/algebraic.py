"""Real algebraic numbers as (square-free polynomial, isolating interval).

Root counting uses Sturm sequences over exact rationals; isolating intervals
are refined by bisection. Nothing here touches floating point except the
display helpers ``approx`` and ``__float__``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .poly import RationalPolynomial, poly_gcd

__all__ = [
    "AlgebraicNumber",
    "DEFAULT_WIDTH",
    "sturm_sequence",
    "sign_variations",
    "count_roots",
    "isolate_roots",
]

DEFAULT_WIDTH = Fraction(1, 2**80)
APPROX_DIGITS = 30


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def sign_variations(seq: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [v > 0 for v in (q.sign_at(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: RationalPolynomial, lo: Fraction, hi: Fraction, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the closed interval ``[lo, hi]``."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return 0
    seq = seq or sturm_sequence(p)
    # Sturm counts roots in (lo, hi]
    return sign_variations(seq, lo) - sign_variations(seq, hi) + (1 if p(lo) == 0 else 0)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """A real root of ``poly`` known to be the only one in ``[lo, hi]``.

    ``poly`` is monic and square-free. A rational value is always stored
    with ``lo == hi`` and a linear ``poly``, so ``rational`` is exact.
    """

    poly: RationalPolynomial
    lo: Fraction
    hi: Fraction
    _approx: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def from_rational(cls, r) -> "AlgebraicNumber":
        r = Fraction(r)
        return cls(RationalPolynomial([-r, 1]), r, r)

    @classmethod
    def from_isolating(cls, poly: RationalPolynomial, lo, hi,
                       width: Fraction = DEFAULT_WIDTH) -> "AlgebraicNumber":
        """Build from a square-free ``poly`` with exactly one root in ``[lo, hi]``.

        Detects a rational root exactly: the denominator of any rational root
        divides the leading coefficient ``L`` of the primitive integer form, so
        once the interval is narrower than ``1/(2 L**2)`` the best approximation
        with denominator at most ``L`` is the only candidate.
        """
        lo, hi = Fraction(lo), Fraction(hi)
        poly = poly.monic()
        if poly(lo) == 0:
            return cls.from_rational(lo)
        if poly(hi) == 0:
            return cls.from_rational(hi)
        if poly.degree == 1:
            return cls.from_rational(-poly.coefficients[0])
        lead = poly.primitive()[-1]
        lo, hi = _bisect(poly, lo, hi, min(width, Fraction(1, 4 * lead * lead)))
        if lo == hi:
            return cls.from_rational(lo)
        cand = ((lo + hi) / 2).limit_denominator(lead)
        if lo <= cand <= hi and poly(cand) == 0:
            return cls.from_rational(cand)
        return cls(poly, lo, hi)

    @property
    def rational(self) -> Fraction | None:
        return self.lo if self.lo == self.hi else None

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def refine(self, width: Fraction) -> "AlgebraicNumber":
        if self.is_rational or self.hi - self.lo <= width:
            return self
        lo, hi = _bisect(self.poly, self.lo, self.hi, width)
        return AlgebraicNumber(self.poly, lo, hi)

    @property
    def approx(self) -> str:
        """Decimal string with 30 significant digits (display only)."""
        if not self._approx:
            fine = self.refine(Fraction(1, 2**130))
            mid = (fine.lo + fine.hi) / 2
            with localcontext() as ctx:
                ctx.prec = APPROX_DIGITS
                text = str(+(Decimal(mid.numerator) / Decimal(mid.denominator)))
            self._approx.append(text)
        return self._approx[0]

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        fine = self.refine(Fraction(1, 2**60))
        return float((fine.lo + fine.hi) / 2)

    def one_minus(self) -> "AlgebraicNumber":
        """``1 - self``."""
        return AlgebraicNumber(self.poly.reflect().monic(), 1 - self.hi, 1 - self.lo)

    def compare(self, x) -> int:
        """Sign of ``self - x`` for rational ``x``, decided exactly."""
        x = Fraction(x)
        if self.is_rational:
            return _sign(self.lo - x)
        if self.poly(x) == 0 and self.lo <= x <= self.hi:
            return 0
        lo, hi = self.lo, self.hi
        while lo <= x <= hi:
            lo, hi = _bisect_once(self.poly, lo, hi)
        return 1 if x < lo else -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.compare(other) == 0
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.is_rational or other.is_rational:
            if self.is_rational and other.is_rational:
                return self.lo == other.lo
            alg, rat = (other, self) if self.is_rational else (self, other)
            return alg.compare(rat.lo) == 0
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return False
        g = poly_gcd(self.poly, other.poly)
        if g.degree < 1:
            return False
        return count_roots(g, lo, hi) == 1

    __hash__ = None  # equal values may carry different intervals

    def __lt__(self, other: "AlgebraicNumber") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "AlgebraicNumber") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "AlgebraicNumber") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "AlgebraicNumber") -> bool:
        return self._cmp(other) >= 0

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return self.compare(other)
        if other.is_rational:
            return self.compare(other.lo)
        if self.is_rational:
            return -other.compare(self.lo)
        if self == other:
            return 0
        a, b = self, other
        while not (a.hi < b.lo or b.hi < a.lo):
            a = a.refine((a.hi - a.lo) / 2)
            b = b.refine((b.hi - b.lo) / 2)
        return -1 if a.hi < b.lo else 1

    def to_json(self) -> dict:
        out = {
            "interval_lo": _frac_str(self.lo),
            "interval_hi": _frac_str(self.hi),
            "approx": self.approx,
        }
        out["rational"] = _frac_str(self.lo) if self.is_rational else None
        return out

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicNumber({self.lo})"
        return f"AlgebraicNumber(root of {self.poly} ~ {self.approx})"


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _bisect_once(p: RationalPolynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    mid = (lo + hi) / 2
    vm = p.sign_at(mid)
    if vm == 0:
        return mid, mid
    if p.sign_at(lo) * vm < 0:
        return lo, mid
    return mid, hi


def _bisect(p: RationalPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    # simple root strictly inside (lo, hi): p changes sign across it
    s_lo = p.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        vm = p.sign_at(mid)
        if vm == 0:
            return mid, mid
        if s_lo * vm < 0:
            hi = mid
        else:
            lo, s_lo = mid, vm
    return lo, hi


def _open_count(sq, seq, a: Fraction, b: Fraction) -> int:
    return sign_variations(seq, a) - sign_variations(seq, b) - (1 if sq(b) == 0 else 0)


def _clear_endpoints(sq, seq, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an open bracket holding one root until neither endpoint is a root."""
    while sq(a) == 0 or sq(b) == 0:
        mid = (a + b) / 2
        if sq(mid) == 0:
            return mid, mid
        if _open_count(sq, seq, a, mid) == 1:
            b = mid
        else:
            a = mid
    return a, b


def isolate_roots(p: RationalPolynomial, lo=Fraction(0), hi=Fraction(1),
                  width: Fraction = DEFAULT_WIDTH,
                  checkpoints: Sequence = ()) -> list[AlgebraicNumber]:
    """All distinct real roots of ``p`` in ``[lo, hi]``, ascending.

    ``checkpoints`` are rationals tested exactly first; the search then runs
    on the open gaps between them so no root sits on an interval boundary.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    lo, hi = Fraction(lo), Fraction(hi)
    sq = p.square_free()
    if sq.degree < 1:
        return []
    seq = sturm_sequence(sq)
    cuts = sorted({lo, hi, *(Fraction(c) for c in checkpoints if lo <= c <= hi)})
    exact = [c for c in cuts if sq(c) == 0]
    brackets: list[tuple[Fraction, Fraction]] = []
    stack = [(a, b) for a, b in zip(cuts, cuts[1:])]
    while stack:
        a, b = stack.pop()
        # roots in the open interval (a, b)
        n = _open_count(sq, seq, a, b)
        if n == 0:
            continue
        if n == 1:
            brackets.append((a, b))
            continue
        mid = (a + b) / 2
        if sq(mid) == 0:
            exact.append(mid)
        stack.extend([(a, mid), (mid, b)])
    roots = [AlgebraicNumber.from_rational(c) for c in exact]
    for a, b in brackets:
        a, b = _clear_endpoints(sq, seq, a, b)
        roots.append(AlgebraicNumber.from_isolating(sq, a, b, width))
    roots.sort(key=lambda r: r.lo)
    return roots
